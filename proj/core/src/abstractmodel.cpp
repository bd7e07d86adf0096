#include "gammalab/abstractmodel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace gammalab {

namespace {

struct Limit {
  CMatrix M;
  int iterations = 0;
  double last_increment = 0.0;
  double monotonicity_violation = 0.0;
};

double window_norm(const CMatrix& x, const std::optional<CoordinateWindow>& w) {
  if (!w) return op_norm(x);
  const Index len = w->end - w->begin;
  return op_norm(x.block(w->begin, w->begin, len, len));
}

Limit strong_limit(const CMatrix& x, const Tolerances& tol, const std::optional<CoordinateWindow>& w,
                   int max_iter) {
  const Index m = x.rows();
  Limit out;
  out.M = CMatrix::Identity(m, m);
  // Cauchy threshold sits well below eq_tol so the geometric tail of a decaying
  // direction lands under the range floor applied afterwards.
  const double stop = 1e-4 * tol.eq_tol;
  double prev = HUGE_VAL;
  for (int k = 1; k <= max_iter; ++k) {
    CMatrix next = hermitian_part(x.adjoint() * out.M * x);
    const double inc = window_norm(next - out.M, w);
    if (std::isfinite(prev)) out.monotonicity_violation = std::max(out.monotonicity_violation, inc - prev);
    prev = inc;
    out.M = std::move(next);
    out.iterations = k;
    out.last_increment = inc;
    if (inc <= stop) return out;
  }
  throw LabError(ErrorCode::NoConvergence, "last increment " + std::to_string(out.last_increment) + " after " +
                                               std::to_string(max_iter) + " iterations");
}

// Eigenvalues at or below max(eq_tol, rank_tol * max) are set to zero.
CMatrix snap(const CMatrix& m, const Tolerances& tol, Subspace* range) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  Eigen::VectorXd ev = es.eigenvalues();
  const double top = ev.size() > 0 ? ev.maxCoeff() : 0.0;
  const double floor = std::max(tol.eq_tol, tol.rank_tol * top);
  std::vector<Index> keep;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > floor) {
      keep.push_back(i);
    } else {
      ev(i) = 0.0;
    }
  }
  if (range != nullptr) {
    CMatrix b(m.rows(), static_cast<Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) b.col(static_cast<Index>(c)) = es.eigenvectors().col(keep[c]);
    *range = Subspace(b);
  }
  return hermitian_part(es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint());
}

// Window coordinates whose image under P stays inside the window.
std::vector<Index> stable_coordinates(const CMatrix& p, const CoordinateWindow& w, const Tolerances& tol) {
  std::vector<Index> out;
  const Index len = w.end - w.begin;
  for (Index j = w.begin; j < w.end; ++j) {
    const double inside = p.col(j).segment(w.begin, len).norm();
    const double total = p.col(j).norm();
    if (total * total - inside * inside <= tol.eq_tol * tol.eq_tol) out.push_back(j);
  }
  return out;
}

CMatrix coordinate_columns(Index m, const std::vector<Index>& idx) {
  CMatrix e = CMatrix::Zero(m, static_cast<Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) e(idx[c], static_cast<Index>(c)) = 1.0;
  return e;
}

double spectral_radius(const CMatrix& p) {
  if (p.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<CMatrix> es(p, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

AsymptoticData asymptotic_limits(const CMatrix& p, const Tolerances& tol, const AsymptoticOptions& opts) {
  if (p.rows() != p.cols()) throw LabError(ErrorCode::DimensionMismatch, "P must be square");
  const double pn = op_norm(p);
  if (pn > 1.0 + tol.cert_tol) throw LabError(ErrorCode::NotContraction, "norm of P is " + std::to_string(pn));
  if (opts.window && (opts.window->begin < 0 || opts.window->end > p.rows() || opts.window->begin >= opts.window->end)) {
    throw LabError(ErrorCode::InvalidArgument, "window outside the coordinate range");
  }
  if (opts.check_cnu && unitary_subspace(p, tol).dim() > 0) {
    throw LabError(ErrorCode::NotCNU, "P has a unitary reducing part");
  }
  const Index m = p.rows();
  int max_iter = 100000;
  if (opts.max_iter) {
    max_iter = *opts.max_iter;
  } else {
    const double rho = spectral_radius(p);
    if (rho < 1.0) {
      const double est = 10.0 * static_cast<double>(m) * std::ceil(1.0 / (1.0 - rho * rho));
      max_iter = static_cast<int>(std::min(1e5, std::max(2000.0, est)));
    }
  }

  AsymptoticData ad;
  ad.windowed = opts.window.has_value();
  const Limit a = strong_limit(p, tol, opts.window, max_iter);
  const Limit as = strong_limit(p.adjoint(), tol, opts.window, max_iter);
  ad.iterations_used = a.iterations;
  ad.iterations_used_star = as.iterations;
  ad.last_increment = a.last_increment;
  ad.last_increment_star = as.last_increment;
  ad.monotonicity_violation = std::max(a.monotonicity_violation, as.monotonicity_violation);
  ad.A_lim = snap(a.M, tol, &ad.ranA);
  ad.Astar_lim = snap(as.M, tol, nullptr);
  ad.A_half = psd_sqrt(ad.A_lim, tol);
  // Windowed data is only meaningful away from the truncation edge, so the identities are
  // checked on the window coordinates that P keeps inside the window.
  CMatrix probe = CMatrix::Identity(m, m);
  if (opts.window) probe = coordinate_columns(m, stable_coordinates(p, *opts.window, tol));
  ad.fixed_point_residual = op_norm(probe.adjoint() * (p.adjoint() * ad.A_lim * p - ad.A_lim) * probe);

  const Index r = ad.ranA.dim();
  const CMatrix& u = ad.ranA.basis;
  if (r == 0) {
    ad.V_r = CMatrix::Zero(0, 0);
    ad.Q_r = CMatrix::Zero(0, 0);
    return ad;
  }
  const CMatrix x = u.adjoint() * ad.A_half;
  const CMatrix y = u.adjoint() * ad.A_half * p;
  ad.V_r = y * pinv(x, tol);
  const CMatrix inner = u.adjoint() * ad.A_half * ad.Astar_lim * ad.A_half * u;
  ad.Q_r = psd_sqrt(CMatrix::Identity(r, r) - hermitian_part(inner), tol);
  const CMatrix iso = ad.V_r.adjoint() * ad.V_r - CMatrix::Identity(r, r);
  if (opts.window) {
    const Subspace z = range_basis(u.adjoint() * ad.A_half * probe, tol);
    ad.v_isometry_residual = z.dim() == 0 ? 0.0 : op_norm(z.basis.adjoint() * iso * z.basis);
  } else {
    ad.v_isometry_residual = op_norm(iso);
  }
  ad.qv_commutator = op_norm(ad.Q_r * ad.V_r - ad.V_r * ad.Q_r);
  ad.qvstar_commutator = op_norm(ad.Q_r * ad.V_r.adjoint() - ad.V_r.adjoint() * ad.Q_r);
  return ad;
}

ModelEmbedding build_embedding(const GammaTuple& g, const AsymptoticData& ad, const ModelDepths& depths,
                               const Tolerances& tol, bool relaxed) {
  validate(g, tol);
  if (depths.fourier < 2 || depths.laurent < 2) throw LabError(ErrorCode::InvalidArgument, "depths must be at least 2");
  const Index m = g.dim();
  if (ad.A_lim.rows() != m) throw LabError(ErrorCode::DimensionMismatch, "asymptotic data does not match the tuple");
  ModelEmbedding me;
  me.depths = depths;
  me.relaxed = relaxed;
  bool violated = false;
  for (const auto& s : g.S) {
    const double c = op_norm(s.adjoint() * g.P - g.P * s.adjoint());
    me.commutation_residual = std::max(me.commutation_residual, c);
    if (c > tol.eq_tol * (1.0 + op_norm(s))) violated = true;
  }
  if (violated && !relaxed) {
    throw LabError(ErrorCode::CommutationViolated, "||S_i* P - P S_i*|| = " + std::to_string(me.commutation_residual));
  }
  const DefectPair dp = defect_pair(g.P, tol);

  const int fd = depths.fourier;
  me.W1 = CMatrix::Zero((fd + 1) * m, m);
  CMatrix pk = CMatrix::Identity(m, m);
  for (int k = 0; k <= fd; ++k) {
    me.W1.middleRows(k * m, m) = dp.D * pk;
    pk = pk * g.P;
  }
  me.tail_bound = std::sqrt(std::max(0.0, op_norm(pk.adjoint() * pk - ad.A_lim)));

  const int ld = depths.laurent;
  me.W2 = CMatrix::Zero((2 * ld + 1) * m, m);
  const Index r = ad.ranA.dim();
  if (r == 0) {
    me.H0 = Subspace::full(m);
    return me;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(ad.Q_r));
  const Eigen::VectorXd ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  CMatrix qinv = CMatrix::Zero(r, r);
  CMatrix ranq_proj = CMatrix::Zero(r, r);
  double low = top;
  for (Index i = 0; i < r; ++i) {
    if (ev(i) > tol.rank_tol * top) {
      low = std::min(low, ev(i));
      qinv += (1.0 / ev(i)) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      ranq_proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
  }
  if (top <= 0.0 || top / low > 1.0 / tol.cert_tol) {
    throw LabError(ErrorCode::QInverseIllConditioned, "condition of Q on its range exceeds 1/cert_tol");
  }
  const CMatrix& u = ad.ranA.basis;
  const CMatrix left = dp.Dstar * ad.A_half * u * qinv;
  const CMatrix right = u.adjoint() * ad.A_half;
  CMatrix vk = CMatrix::Identity(r, r);
  CMatrix vks = CMatrix::Identity(r, r);
  for (int k = 0; k <= ld; ++k) {
    me.W2.middleRows((ld + k) * m, m) = left * vk * right;
    if (k > 0) me.W2.middleRows((ld - k) * m, m) = left * vks * right;
    vk = vk * ad.V_r;
    vks = vks * ad.V_r.adjoint();
  }
  const CMatrix outside = (CMatrix::Identity(r, r) - ranq_proj) * right;
  me.H0 = orthogonal_complement(range_basis(outside.adjoint(), tol), tol);
  return me;
}

ModelReport verify_model(const GammaTuple& g, const ModelEmbedding& me, const FundamentalTuple& f,
                         const FundamentalTuple& fadj, const Tolerances&) {
  const int n = g.n;
  const Index m = g.dim();
  const int fd = me.depths.fourier;
  const int ld = me.depths.laurent;
  const CMatrix ppstar = g.P * g.P.adjoint();
  const CMatrix& h0 = me.H0.basis;
  auto w1 = [&](int k) { return me.W1.middleRows(k * m, m); };
  auto w2 = [&](int k) { return me.W2.middleRows((ld + k) * m, m); };

  ModelReport rep;
  rep.relaxed = me.relaxed;
  rep.label = me.relaxed ? "model hypothesis violated — demonstration only" : "model hypothesis satisfied";
  for (int i = 1; i <= n - 1; ++i) {
    const CMatrix ai = f.embedded(i);
    const CMatrix ani = f.embedded(n - i).adjoint();
    CMatrix diff(fd * m, m);
    for (int k = 0; k < fd; ++k) diff.middleRows(k * m, m) = w1(k) * g.s(i) - (ai * w1(k) + ani * w1(k + 1));
    rep.w1_residual.push_back(op_norm(diff));

    const CMatrix bi = fadj.embedded(i).adjoint();
    const CMatrix bni = ppstar * fadj.embedded(n - i);
    CMatrix diff2(2 * ld * m, h0.cols());
    for (int k = -ld; k < ld; ++k) {
      diff2.middleRows((k + ld) * m, m) = (w2(k) * g.s(i) - (bi * w2(k) + bni * w2(k + 1))) * h0;
    }
    rep.w2_residual.push_back(op_norm(diff2));
  }
  CMatrix dp1(fd * m, m);
  for (int k = 0; k < fd; ++k) dp1.middleRows(k * m, m) = w1(k) * g.P - w1(k + 1);
  rep.p_w1_residual = op_norm(dp1);
  CMatrix dp2(2 * ld * m, h0.cols());
  for (int k = -ld; k < ld; ++k) dp2.middleRows((k + ld) * m, m) = (w2(k) * g.P - w2(k + 1)) * h0;
  rep.p_w2_residual = op_norm(dp2);
  return rep;
}

Lemma1Report lemma1_check(const GammaTuple& g, const FundamentalTuple& fadj, const AsymptoticData& ad,
                          const Tolerances& tol, std::optional<CoordinateWindow> interior) {
  const int n = g.n;
  const DefectPair dp = defect_pair(g.P, tol);
  const CMatrix& ds = dp.Dstar;
  const CMatrix ppstar = g.P * g.P.adjoint();
  const CMatrix& u = ad.ranA.basis;
  CMatrix probe = u;
  if (interior) {
    const Index len = interior->end - interior->begin;
    probe = u * u.adjoint().middleCols(interior->begin, len);
  }
  const CMatrix v_probe = u * ad.V_r * u.adjoint() * probe;

  Lemma1Report rep;
  for (int i = 1; i <= n - 1; ++i) {
    const CMatrix bi_star = fadj.embedded(i).adjoint();
    const CMatrix bni = fadj.embedded(n - i);
    if (probe.cols() > 0) {
      const CMatrix lhs = bi_star * ds * ad.A_half * probe + ppstar * bni * ds * ad.A_half * v_probe;
      const CMatrix rhs = ds * g.s(i) * ad.A_half * probe;
      rep.range_identity.push_back(op_norm(lhs - rhs));
    } else {
      rep.range_identity.push_back(0.0);
    }
    const CMatrix lhs2 = bi_star * ds * g.P.adjoint() + ppstar * bni * ds;
    const CMatrix rhs2 = ds * g.s(i) * g.P.adjoint();
    rep.adjoint_identity.push_back(op_norm(lhs2 - rhs2));
  }
  return rep;
}

}  // namespace gammalab
