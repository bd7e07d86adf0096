#include "gammalab/hardy.hpp"

#include <algorithm>

namespace gammalab {

namespace {

CMatrix block(const CMatrix& m, Index k_rows, Index k_cols, Index a, Index b) {
  return m.block(a * k_rows, b * k_cols, k_rows, k_cols);
}

struct Extraction {
  std::vector<CMatrix> B;
  std::vector<CMatrix> Bsub;
  double structure = 0.0;
  double invariance = 0.0;
  int interior = 0;
};

Extraction extract(const MatrixPolynomial& theta, std::span<const CMatrix> A, int depth) {
  const int n = static_cast<int>(A.size()) + 1;
  const Index k = theta.rows();
  const Index r = theta.cols();
  const CMatrix tt = multiplication_section(theta, depth);
  const CMatrix range_proj = tt * tt.adjoint();
  const CMatrix id = CMatrix::Identity(tt.rows(), tt.rows());
  Extraction ex;
  ex.interior = depth + 1 - (theta.degree() + 1);
  const Index nb = ex.interior;
  for (int i = 1; i <= n - 1; ++i) {
    const CMatrix tphi = toeplitz({A[i - 1].adjoint(), A[n - i - 1]}, depth).matrix;
    const CMatrix right = tphi * tt;
    const CMatrix g = tt.adjoint() * right;
    CMatrix bi = block(g, r, r, 0, 0);
    CMatrix bs = block(g, r, r, 1, 0);
    for (Index a = 0; a < nb; ++a) {
      for (Index b = 0; b < nb; ++b) {
        CMatrix expect = CMatrix::Zero(r, r);
        if (a == b) expect = bi;
        if (a == b + 1) expect = bs;
        ex.structure = std::max(ex.structure, op_norm(block(g, r, r, a, b) - expect));
      }
    }
    const CMatrix leak = (id - range_proj) * right;
    ex.invariance = std::max(ex.invariance, op_norm(leak.topLeftCorner(nb * k, nb * r)));
    ex.B.push_back(std::move(bi));
    ex.Bsub.push_back(std::move(bs));
  }
  return ex;
}

}  // namespace

ToeplitzTrunc toeplitz(const PencilSymbol& symbol, int depth) {
  if (depth < 2) throw LabError(ErrorCode::InvalidArgument, "Toeplitz depth must be at least 2");
  const Index k = symbol.size();
  if (symbol.c0.cols() != k || symbol.c1.rows() != k || symbol.c1.cols() != k) {
    throw LabError(ErrorCode::DimensionMismatch, "pencil coefficients must be square of equal size");
  }
  ToeplitzTrunc t{symbol, depth, CMatrix::Zero(k * (depth + 1), k * (depth + 1))};
  for (int j = 0; j <= depth; ++j) {
    t.matrix.block(j * k, j * k, k, k) = symbol.c0;
    if (j < depth) t.matrix.block((j + 1) * k, j * k, k, k) = symbol.c1;
  }
  return t;
}

CMatrix shift_section(Index k, int depth) {
  return toeplitz({CMatrix::Zero(k, k), CMatrix::Identity(k, k)}, depth).matrix;
}

PureIsometryVerdict pure_gamma_isometry_check(std::span<const CMatrix> F, const PureCheckConfig& cfg,
                                              const Tolerances& tol) {
  if (F.empty()) throw LabError(ErrorCode::InvalidArgument, "need at least one symbol coefficient");
  const int n = static_cast<int>(F.size()) + 1;
  const Index k = F[0].rows();
  for (const auto& f : F) {
    if (f.rows() != k || f.cols() != k) throw LabError(ErrorCode::DimensionMismatch, "F_i must be k x k");
  }
  PureIsometryVerdict v;
  if (k == 0) {
    v.passed = true;
    return v;
  }
  std::vector<CMatrix> ops;
  std::vector<double> norms;
  for (int i = 1; i <= n - 1; ++i) {
    ops.push_back(toeplitz({F[i - 1].adjoint(), F[n - i - 1]}, cfg.depth).matrix);
    norms.push_back(op_norm(ops.back()));
  }
  const CMatrix tz = shift_section(k, cfg.depth);
  ops.push_back(tz);
  norms.push_back(1.0);

  bool commuting = true;
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = a + 1; b < ops.size(); ++b) {
      const double c = op_norm(ops[a] * ops[b] - ops[b] * ops[a]);
      v.max_commutator = std::max(v.max_commutator, c);
      if (c > tol.eq_tol * (norms[a] * norms[b] + 1.0)) commuting = false;
    }
  }
  const Index interior = k * cfg.depth;
  bool algebra = true;
  for (int i = 1; i <= n - 1; ++i) {
    const CMatrix diff = ops[i - 1] - ops[n - i - 1].adjoint() * tz;
    const double r = op_norm(diff.topLeftCorner(interior, interior));
    v.algebra_residual = std::max(v.algebra_residual, r);
    if (r > tol.eq_tol * (1.0 + norms[i - 1])) algebra = false;
  }
  if (!commuting) {
    v.failed = "commutation";
    return v;
  }
  if (!algebra) {
    v.failed = "algebra";
    return v;
  }

  std::optional<SupNormProbe> probe;
  if (n - 1 >= 2) probe.emplace(n - 1, cfg.probe);
  std::vector<CMatrix> c0, c1;
  for (int j = 1; j <= n - 1; ++j) {
    c0.push_back(F[j - 1].adjoint());
    c1.push_back(F[n - j - 1]);
  }
  for (int s = 0; s < cfg.resolution; ++s) {
    const cplx z = unit_root(s, cfg.resolution);
    const VnVerdict r = contraction_probe(weighted_pencil(c0, c1, z), probe ? &*probe : nullptr, tol);
    ++v.pencils_tested;
    v.max_ratio = std::max(v.max_ratio, r.max_ratio);
    if (r.falsified) {
      v.failed = "pencil";
      v.failing_z = z;
      v.evidence = r;
      return v;
    }
  }
  v.passed = true;
  return v;
}

CMatrix MatrixPolynomial::eval(cplx z) const {
  CMatrix acc = CMatrix::Zero(rows(), cols());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (z * acc + *it).eval();
  return acc;
}

CMatrix multiplication_section(const MatrixPolynomial& theta, int depth) {
  if (theta.coeffs.empty()) throw LabError(ErrorCode::InvalidArgument, "matrix polynomial has no coefficients");
  const Index k = theta.rows();
  const Index r = theta.cols();
  CMatrix m = CMatrix::Zero(k * (depth + 1), r * (depth + 1));
  for (int b = 0; b <= depth; ++b) {
    for (int d = 0; d <= theta.degree() && b + d <= depth; ++d) {
      m.block((b + d) * k, b * r, k, r) = theta.coeffs[d];
    }
  }
  return m;
}

BlhResult blh_intertwine(const MatrixPolynomial& theta, std::span<const CMatrix> A, int depth,
                         const Tolerances& tol, int grid) {
  if (theta.coeffs.empty() || A.empty()) throw LabError(ErrorCode::InvalidArgument, "empty Theta or A");
  const int n = static_cast<int>(A.size()) + 1;
  const Index k = theta.rows();
  for (const auto& c : theta.coeffs) {
    if (c.rows() != k || c.cols() != theta.cols()) {
      throw LabError(ErrorCode::DimensionMismatch, "Theta coefficients must share a shape");
    }
  }
  for (const auto& a : A) {
    if (a.rows() != k || a.cols() != k) throw LabError(ErrorCode::DimensionMismatch, "A_i must act on the range of Theta");
  }
  if (depth < 2 * (1 + theta.degree())) {
    throw LabError(ErrorCode::InvalidArgument, "depth must be at least 2 (1 + deg Theta)");
  }
  if (grid < 1) throw LabError(ErrorCode::InvalidArgument, "grid must be positive");

  BlhResult res;
  const Index r = theta.cols();
  for (int s = 0; s < std::max(grid, 64); ++s) {
    const CMatrix t = theta.eval(unit_root(s, std::max(grid, 64)));
    res.inner_residual = std::max(res.inner_residual, op_norm(t.adjoint() * t - CMatrix::Identity(r, r)));
  }
  if (res.inner_residual > tol.eq_tol) {
    throw LabError(ErrorCode::NotInner, "boundary isometry residual " + std::to_string(res.inner_residual));
  }

  const Extraction ex = extract(theta, A, depth);
  double scale = 1.0;
  for (const auto& a : A) scale = std::max(scale, 1.0 + op_norm(a));
  res.structure_residual = ex.structure;
  res.range_invariance_residual = ex.invariance;
  res.interior_blocks = ex.interior;
  if (res.structure_residual > tol.eq_tol * scale) {
    throw LabError(ErrorCode::NotToeplitz, "compressed symbol structure residual " + std::to_string(ex.structure));
  }
  res.B = ex.B;
  for (int i = 1; i <= n - 1; ++i) {
    res.consistency_residual =
        std::max(res.consistency_residual, op_norm(ex.Bsub[i - 1] - ex.B[n - i - 1].adjoint()));
  }
  for (int s = 0; s < grid; ++s) {
    const cplx z = 0.9 * unit_root(s, grid);
    const CMatrix t = theta.eval(z);
    for (int i = 1; i <= n - 1; ++i) {
      const CMatrix lhs = (A[i - 1].adjoint() + z * A[n - i - 1]) * t;
      const CMatrix rhs = t * (res.B[i - 1] + z * res.B[n - i - 1].adjoint());
      res.intertwining_residual = std::max(res.intertwining_residual, op_norm(lhs - rhs));
    }
  }
  const Extraction deep = extract(theta, A, 2 * depth);
  for (int i = 0; i < n - 1; ++i) {
    res.depth_stability = std::max(res.depth_stability, op_norm(deep.B[i] - ex.B[i]));
  }
  return res;
}

}  // namespace gammalab
