#include <cmath>

#include "gammalab/abstractmodel.hpp"

namespace gammalab {

GammaTuple example1_tuple(Index m, int n, double alpha) {
  if (m < 3 || n < 2) throw LabError(ErrorCode::InvalidArgument, "example needs m >= 3 and n >= 2");
  CMatrix t = CMatrix::Zero(m, m);
  t(1, 0) = alpha;
  for (Index j = 1; j + 1 < m; ++j) t(j + 1, j) = 1.0;
  std::vector<CMatrix> ops(static_cast<std::size_t>(n - 2), CMatrix::Identity(m, m));
  ops.push_back(t);
  ops.push_back(t);
  return symmetrize_operators(ops);
}

Example1Report example1_counterexample(Index m, int n, double alpha, const Tolerances& tol, const ModelDepths& depths) {
  if (m < 8) throw LabError(ErrorCode::InvalidArgument, "example needs m >= 8");
  if (!(alpha > 0.0 && alpha < 1.0)) throw LabError(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  if (n < 2) throw LabError(ErrorCode::InvalidArgument, "example needs n >= 2");
  Example1Report rep;
  rep.m = m;
  rep.n = n;
  rep.alpha = alpha;
  rep.expected_gap = 2.0 * alpha * (1.0 - alpha * alpha);

  const GammaTuple g = example1_tuple(m, n, alpha);
  const FundamentalTuple f = fo_tuple(g, tol);
  const FundamentalTuple fadj = fo_tuple(g.adjoint(), tol);
  const DefectPair dp = defect_pair(g.P, tol);
  const Index len = m - 4;
  AsymptoticOptions opts;
  opts.window = CoordinateWindow{0, len};
  const AsymptoticData ad = asymptotic_limits(g.P, tol, opts);

  const double beta = std::sqrt(1.0 - alpha * alpha);
  const double c = static_cast<double>(n - 2);
  auto diag = [len](std::initializer_list<double> head, double rest) {
    CMatrix d = CMatrix::Identity(len, len) * rest;
    Index i = 0;
    for (double v : head) {
      d(i, i) = v;
      ++i;
    }
    return d;
  };
  auto top = [len](const CMatrix& x) { return x.topLeftCorner(len, len); };
  CMatrix b1 = CMatrix::Zero(len, len);
  b1(0, 0) = c;
  b1(1, 1) = c;
  b1(2, 2) = c;
  b1(0, 1) = 2.0 * alpha;
  b1(1, 2) = 2.0 * beta;
  CMatrix bn1 = CMatrix::Zero(len, len);
  bn1(0, 1) = 2.0 * alpha;
  bn1(1, 2) = 2.0 * beta;
  const CMatrix q_ambient = ad.ranA.basis * ad.Q_r * ad.ranA.basis.adjoint();

  rep.closed_form_residuals = {
      {"D_P", op_norm(top(dp.D) - diag({beta}, 0.0))},
      {"D_Pstar", op_norm(top(dp.Dstar) - diag({1.0, 1.0, beta}, 0.0))},
      {"A_half", op_norm(top(ad.A_half) - diag({alpha}, 1.0))},
      {"A_star", op_norm(top(ad.Astar_lim))},
      {"Q", op_norm(top(q_ambient) - CMatrix::Identity(len, len))},
      {"B_1", op_norm(top(fadj.embedded(1)) - b1)},
      {"B_n-1", op_norm(top(fadj.embedded(n - 1)) - bn1)},
  };
  rep.fo_a1_residual = std::abs(f.embedded(1)(0, 0) - c);

  const CMatrix e1 = CMatrix::Identity(m, m).col(0);
  const CMatrix& s1 = g.s(1);
  rep.gap = (dp.Dstar * s1 * ad.A_lim * e1 - dp.Dstar * ad.A_lim * s1 * e1).norm();

  const ModelEmbedding me = build_embedding(g, ad, depths, tol, true);
  const ModelReport mr = verify_model(g, me, f, fadj, tol);
  rep.label = mr.label;
  for (double r : mr.w1_residual) rep.w1_residual = std::max(rep.w1_residual, r);
  rep.w1_residual = std::max(rep.w1_residual, mr.p_w1_residual);
  for (double r : mr.w2_residual) rep.w2_residual = std::max(rep.w2_residual, r);

  const int ld = depths.laurent;
  const CMatrix d0 = me.W2.middleRows(ld * m, m);
  const CMatrix d1 = me.W2.middleRows((ld + 1) * m, m);
  const CMatrix model_const = fadj.embedded(1).adjoint() * d0 + g.P * g.P.adjoint() * fadj.embedded(n - 1) * d1;
  rep.model_gap = ((model_const - d0 * s1) * e1).norm();

  rep.lemma1 = lemma1_check(g, fadj, ad, tol, CoordinateWindow{0, m - 6});
  return rep;
}

}  // namespace gammalab
