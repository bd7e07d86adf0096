#include "gammalab/tuple.hpp"

#include <string>

namespace gammalab {

std::vector<CMatrix> GammaTuple::operators() const {
  std::vector<CMatrix> ops = S;
  ops.push_back(P);
  return ops;
}

GammaTuple GammaTuple::adjoint() const {
  GammaTuple g;
  g.n = n;
  for (const auto& s : S) g.S.push_back(s.adjoint());
  g.P = P.adjoint();
  return g;
}

TupleDiagnostics diagnose(const GammaTuple& g, const Tolerances& tol) {
  TupleDiagnostics d;
  const Index m = g.P.rows();
  d.shapes_ok = g.n >= 1 && static_cast<int>(g.S.size()) == g.n - 1 && g.P.cols() == m;
  for (const auto& s : g.S) d.shapes_ok = d.shapes_ok && s.rows() == m && s.cols() == m;
  if (!d.shapes_ok) return d;
  d.finite = g.P.allFinite();
  for (const auto& s : g.S) d.finite = d.finite && s.allFinite();
  if (!d.finite) return d;
  const auto ops = g.operators();
  std::vector<double> norms;
  for (const auto& t : ops) norms.push_back(op_norm(t));
  d.commuting = true;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const double c = op_norm(ops[i] * ops[j] - ops[j] * ops[i]);
      d.max_commutator = std::max(d.max_commutator, c);
      if (c > tol.eq_tol * (norms[i] * norms[j] + 1.0)) d.commuting = false;
    }
  }
  d.p_norm = norms.back();
  d.p_contraction = d.p_norm <= 1.0 + tol.cert_tol;
  return d;
}

void validate(const GammaTuple& g, const Tolerances& tol, bool require_contraction) {
  const auto d = diagnose(g, tol);
  if (!d.shapes_ok) {
    throw LabError(ErrorCode::DimensionMismatch, "tuple needs n-1 entries S and equal square shapes");
  }
  if (!d.finite) throw LabError(ErrorCode::InvalidArgument, "tuple has non-finite entries");
  if (!d.commuting) {
    throw LabError(ErrorCode::NotCommuting, "max commutator " + std::to_string(d.max_commutator));
  }
  if (require_contraction && !d.p_contraction) {
    throw LabError(ErrorCode::NotContraction, "norm of P is " + std::to_string(d.p_norm));
  }
}

GammaTuple scalar_tuple(const GammaPoint& pt) {
  GammaTuple g;
  g.n = pt.n;
  for (int i = 0; i + 1 < pt.n; ++i) g.S.push_back(CMatrix::Constant(1, 1, pt.coords[i]));
  g.P = CMatrix::Constant(1, 1, pt.coords.back());
  return g;
}

GammaTuple conjugate(const GammaTuple& g, const CMatrix& u) {
  GammaTuple r;
  r.n = g.n;
  for (const auto& s : g.S) r.S.push_back(u * s * u.adjoint());
  r.P = u * g.P * u.adjoint();
  return r;
}

GammaTuple compress(const GammaTuple& g, const Subspace& sub) {
  const CMatrix& b = sub.basis;
  GammaTuple r;
  r.n = g.n;
  for (const auto& s : g.S) r.S.push_back(b.adjoint() * s * b);
  r.P = b.adjoint() * g.P * b;
  return r;
}

GammaTuple direct_sum(const GammaTuple& a, const GammaTuple& b) {
  if (a.n != b.n) throw LabError(ErrorCode::DimensionMismatch, "direct sum needs equal degrees");
  auto blk = [](const CMatrix& x, const CMatrix& y) {
    CMatrix z = CMatrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
    z.topLeftCorner(x.rows(), x.cols()) = x;
    z.bottomRightCorner(y.rows(), y.cols()) = y;
    return z;
  };
  GammaTuple r;
  r.n = a.n;
  for (std::size_t i = 0; i < a.S.size(); ++i) r.S.push_back(blk(a.S[i], b.S[i]));
  r.P = blk(a.P, b.P);
  return r;
}

GammaTuple symmetrize_operators(std::span<const CMatrix> ops) {
  if (ops.empty()) throw LabError(ErrorCode::InvalidArgument, "need at least one operator");
  const int n = static_cast<int>(ops.size());
  const Index m = ops[0].rows();
  std::vector<CMatrix> e(n + 1, CMatrix::Zero(m, m));
  e[0] = CMatrix::Identity(m, m);
  for (int j = 0; j < n; ++j) {
    if (ops[j].rows() != m || ops[j].cols() != m) {
      throw LabError(ErrorCode::DimensionMismatch, "operators must share a square shape");
    }
    for (int k = j + 1; k >= 1; --k) e[k] += ops[j] * e[k - 1];
  }
  GammaTuple g;
  g.n = n;
  for (int k = 1; k < n; ++k) g.S.push_back(e[k]);
  g.P = e[n];
  return g;
}

GammaTuple weighted_pencil(std::span<const CMatrix> c0, std::span<const CMatrix> c1, cplx z) {
  if (c0.size() != c1.size() || c0.empty()) {
    throw LabError(ErrorCode::DimensionMismatch, "pencil needs equal non-empty coefficient lists");
  }
  const int n = static_cast<int>(c0.size()) + 1;
  GammaTuple g;
  g.n = n - 1;
  for (int j = 1; j <= n - 1; ++j) {
    CMatrix e = (static_cast<double>(n - j) / n) * (c0[j - 1] + z * c1[j - 1]);
    if (j < n - 1) {
      g.S.push_back(std::move(e));
    } else {
      g.P = std::move(e);
    }
  }
  return g;
}

}  // namespace gammalab
