#include "gammalab/dilation.hpp"

#include <algorithm>
#include <map>

namespace gammalab {

namespace {

double restricted_norm(const CMatrix& m, Index size) { return op_norm(m.topLeftCorner(size, size)); }

}  // namespace

DilationTuple schaffer_dilate(const GammaTuple& g, const FundamentalTuple& f, int depth, const Tolerances& tol) {
  if (depth < 2) throw LabError(ErrorCode::TruncationTooShallow, "dilation depth must be at least 2");
  validate(g, tol);
  const int n = g.n;
  if (f.n() != n) throw LabError(ErrorCode::DimensionMismatch, "F_O-tuple length does not match the tuple");
  const Index m = g.dim();
  const Index k = f.defect_dim();
  const DefectPair dp = defect_pair(g.P, tol);
  const CMatrix dc = f.defect.basis.adjoint() * dp.D;

  DilationTuple d;
  d.base = g;
  d.depth = depth;
  d.defect_dim = k;
  d.defect_basis = f.defect.basis;
  const Index total = m + depth * k;
  auto off = [m, k](int j) { return m + (j - 1) * k; };

  d.V = CMatrix::Zero(total, total);
  d.V.topLeftCorner(m, m) = g.P;
  if (k > 0) {
    d.V.block(off(1), 0, k, m) = dc;
    for (int j = 1; j < depth; ++j) d.V.block(off(j + 1), off(j), k, k) = CMatrix::Identity(k, k);
  }
  for (int i = 1; i <= n - 1; ++i) {
    CMatrix r = CMatrix::Zero(total, total);
    r.topLeftCorner(m, m) = g.s(i);
    if (k > 0) {
      const CMatrix as = f.a(n - i).adjoint();
      r.block(off(1), 0, k, m) = as * dc;
      for (int j = 1; j <= depth; ++j) {
        r.block(off(j), off(j), k, k) = f.a(i);
        if (j < depth) r.block(off(j + 1), off(j), k, k) = as;
      }
    }
    d.R.push_back(std::move(r));
  }
  CMatrix e = CMatrix::Zero(total, m);
  e.topRows(m) = CMatrix::Identity(m, m);
  d.embed = Subspace(e);

  const Index in = d.interior_dim();
  d.interior_isometry_residual = restricted_norm(d.V.adjoint() * d.V - CMatrix::Identity(total, total), in);
  std::vector<CMatrix> ops = d.R;
  ops.push_back(d.V);
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = a + 1; b < ops.size(); ++b) {
      d.interior_commutator_residual =
          std::max(d.interior_commutator_residual, restricted_norm(ops[a] * ops[b] - ops[b] * ops[a], in));
    }
  }
  for (int i = 1; i <= n - 1; ++i) {
    d.interior_algebra_residual = std::max(
        d.interior_algebra_residual, restricted_norm(d.R[i - 1] - d.R[n - i - 1].adjoint() * d.V, in));
  }
  return d;
}

CompressionReport verify_dilation(const DilationTuple& d, int max_degree, const Tolerances& tol) {
  if (max_degree < 0 || 2 * max_degree > d.depth) {
    throw LabError(ErrorCode::InvalidArgument, "max_degree must lie in [0, N/2]");
  }
  const int n = d.base.n;
  const Index m = d.base.dim();
  std::vector<CMatrix> big = d.R;
  big.push_back(d.V);
  const std::vector<CMatrix> small = d.base.operators();
  std::vector<double> norms;
  for (const auto& s : small) norms.push_back(op_norm(s));

  const auto exps = monomial_exponents(n, max_degree);
  std::map<Exponent, std::size_t> where;
  std::vector<CMatrix> big_val(exps.size());
  std::vector<CMatrix> small_val(exps.size());
  CompressionReport rep;
  rep.max_degree = max_degree;
  rep.monomials = exps.size();
  rep.passed = true;
  for (std::size_t q = 0; q < exps.size(); ++q) {
    const Exponent& e = exps[q];
    where[e] = q;
    double growth = 1.0;
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < e[j]; ++p) growth *= std::max(1.0, norms[j]);
    }
    const auto first = std::find_if(e.begin(), e.end(), [](int v) { return v > 0; });
    if (first == e.end()) {
      big_val[q] = d.embed.basis;
      small_val[q] = CMatrix::Identity(m, m);
    } else {
      const int j = static_cast<int>(first - e.begin());
      Exponent prev = e;
      --prev[j];
      const std::size_t pq = where.at(prev);
      big_val[q] = big[j] * big_val[pq];
      small_val[q] = small[j] * small_val[pq];
    }
    const double r = op_norm(big_val[q].topRows(m) - small_val[q]);
    if (r > rep.max_residual || rep.worst_monomial.empty()) {
      rep.max_residual = std::max(rep.max_residual, r);
      rep.worst_monomial = e;
    }
    if (r > tol.eq_tol * growth) rep.passed = false;
  }
  rep.algebra_residual = d.interior_algebra_residual;
  rep.interior_isometry_residual = d.interior_isometry_residual;
  double rscale = 1.0;
  for (const auto& r : d.R) rscale = std::max(rscale, 1.0 + op_norm(r));
  if (rep.algebra_residual > tol.eq_tol * rscale || rep.interior_isometry_residual > tol.eq_tol) {
    rep.passed = false;
  }
  return rep;
}

MinimalityReport minimality_report(const DilationTuple& d, const Tolerances& tol) {
  const Index m = d.base.dim();
  CMatrix krylov(d.total_dim(), m * (d.depth + 1));
  CMatrix cur = d.embed.basis;
  for (int k = 0; k <= d.depth; ++k) {
    krylov.middleCols(k * m, m) = cur;
    cur = d.V * cur;
  }
  MinimalityReport rep;
  rep.krylov_rank = range_basis(krylov, tol).dim();
  rep.space_dim = d.total_dim();
  rep.full = rep.krylov_rank == rep.space_dim;
  return rep;
}

RepresentationSplit representation_split(const DilationTuple& d, const Tolerances& tol, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw LabError(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
  const GammaTuple& g = d.base;
  const int n = g.n;
  const CMatrix& e = d.embed.basis;
  const CMatrix pi = unitary_subspace(g.P, tol).projector();
  constexpr int kMaxTerms = 200000;

  RepresentationSplit out;
  out.alpha = alpha;
  for (int i = 1; i <= n - 1; ++i) {
    const CMatrix t = e.adjoint() * (d.R[i - 1] - d.V * d.R[n - i - 1].adjoint()) * e;
    const double stop = 1e-3 * tol.eq_tol * std::max(1.0, op_norm(t));
    CMatrix c = t;
    CMatrix term = t;
    int terms = 1;
    while (terms < kMaxTerms) {
      term = g.P * term * g.P.adjoint();
      c += term;
      ++terms;
      if (op_norm(term) <= stop) break;
    }
    out.series_terms = std::max(out.series_terms, terms);
    const double w = (2 * i < n) ? alpha : (2 * i > n ? 1.0 - alpha : 0.5);
    c += w * (pi * g.s(i) * pi);
    out.C.push_back(std::move(c));
  }
  for (int i = 1; i <= n - 1; ++i) {
    const double r = op_norm(g.s(i) - (out.C[i - 1] + g.P * out.C[n - i - 1].adjoint()));
    out.per_index.push_back(r);
    out.residual = std::max(out.residual, r);
  }
  if (out.residual > 100.0 * tol.eq_tol) {
    throw LabError(ErrorCode::SplitResidualLarge, "split residual " + std::to_string(out.residual));
  }
  return out;
}

WExtraction extract_W(const DilationTuple& d, const FundamentalTuple& f, const Tolerances& tol) {
  if (d.depth < 3) throw LabError(ErrorCode::TruncationTooShallow, "extract_W needs depth >= 3");
  const Index m = d.base.dim();
  const Index k = d.defect_dim;
  const Index tail = d.total_dim() - m;
  WExtraction w;
  for (const auto& r : d.R) w.W.push_back(r.bottomRightCorner(tail, tail));
  w.Wiso = d.V.bottomRightCorner(tail, tail);
  if (k == 0) return w;
  const DefectPair dp = defect_pair(d.base.P, tol);
  const CMatrix t = d.V.bottomLeftCorner(tail, m);
  const CMatrix phi = t * pinv(dp.D, tol) * d.defect_basis;
  w.embedding_isometry_residual = op_norm(phi.adjoint() * phi - CMatrix::Identity(k, k));
  for (std::size_t i = 0; i < w.W.size(); ++i) {
    w.A_recovered.push_back(phi.adjoint() * w.W[i] * phi);
    w.recovery_residual = std::max(w.recovery_residual, op_norm(w.A_recovered.back() - f.A[i]));
  }
  const Index in = (d.depth - 1) * k;
  w.tail_isometry_residual = restricted_norm(w.Wiso.adjoint() * w.Wiso - CMatrix::Identity(tail, tail), in);
  return w;
}

PureIsometryVerdict necessary1_check(const FundamentalTuple& fadj, const PureCheckConfig& cfg, const Tolerances& tol) {
  return pure_gamma_isometry_check(fadj.A, cfg, tol);
}

}  // namespace gammalab
