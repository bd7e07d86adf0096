#include "gammalab/generators.hpp"

#include <cmath>
#include <numbers>

namespace gammalab {

namespace {

CMatrix random_quadratic(const CMatrix& t, std::mt19937_64& rng) {
  const Index m = t.rows();
  const CMatrix c = gaussian_matrix(3, 1, rng);
  CMatrix f = c(0) * CMatrix::Identity(m, m) + c(1) * t + c(2) * (t * t);
  const double nf = op_norm(f);
  if (nf > 0.0) f *= 0.95 / nf;
  return f;
}

}  // namespace

GammaTuple gen_symmetrized_ando(Index dim, int n, std::uint64_t seed) {
  if (dim < 1 || n < 2) throw LabError(ErrorCode::InvalidArgument, "generator needs dim >= 1 and n >= 2");
  std::mt19937_64 rng(seed);
  CMatrix t = gaussian_matrix(dim, dim, rng);
  t /= op_norm(t);
  std::vector<CMatrix> ops(static_cast<std::size_t>(n - 2), CMatrix::Identity(dim, dim));
  ops.push_back(random_quadratic(t, rng));
  ops.push_back(random_quadratic(t, rng));
  return symmetrize_operators(ops);
}

std::string to_string(DiagonalMode m) {
  switch (m) {
    case DiagonalMode::closed: return "closed";
    case DiagonalMode::interior: return "interior";
    case DiagonalMode::unimodular: return "unimodular";
  }
  return "closed";
}

DiagonalMode diagonal_mode_from_string(const std::string& s) {
  if (s == "closed") return DiagonalMode::closed;
  if (s == "interior") return DiagonalMode::interior;
  if (s == "unimodular") return DiagonalMode::unimodular;
  throw LabError(ErrorCode::InvalidArgument, "unknown diagonal mode '" + s + "'");
}

GammaTuple gen_diagonal_normal(Index dim, int n, std::uint64_t seed, DiagonalMode mode) {
  if (dim < 1 || n < 2) throw LabError(ErrorCode::InvalidArgument, "generator needs dim >= 1 and n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<cplx>> points(static_cast<std::size_t>(dim));
  for (auto& pt : points) {
    for (int j = 0; j < n; ++j) {
      const double theta = 2.0 * std::numbers::pi * u(rng);
      const double draw = u(rng);
      double r = 1.0;
      switch (mode) {
        case DiagonalMode::closed: r = draw < 0.25 ? 1.0 : std::sqrt(u(rng)); break;
        case DiagonalMode::interior: r = 0.95 * std::sqrt(draw); break;
        case DiagonalMode::unimodular: r = 1.0; break;
      }
      pt.push_back(std::polar(r, theta));
    }
  }
  return diagonal_from_points(points);
}

GammaTuple diagonal_from_points(const std::vector<std::vector<cplx>>& points) {
  if (points.empty()) throw LabError(ErrorCode::InvalidArgument, "need at least one point");
  const int n = static_cast<int>(points[0].size());
  const Index m = static_cast<Index>(points.size());
  GammaTuple g;
  g.n = n;
  g.S.assign(static_cast<std::size_t>(n - 1), CMatrix::Zero(m, m));
  g.P = CMatrix::Zero(m, m);
  for (Index k = 0; k < m; ++k) {
    if (static_cast<int>(points[k].size()) != n) {
      throw LabError(ErrorCode::DimensionMismatch, "points must share a length");
    }
    const GammaPoint pt = symmetrize(points[k]);
    for (int i = 0; i + 1 < n; ++i) g.S[i](k, k) = pt.coords[i];
    g.P(k, k) = pt.coords.back();
  }
  return g;
}

}  // namespace gammalab
