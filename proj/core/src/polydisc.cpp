#include "gammalab/polydisc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace gammalab {

namespace {

bool canonical_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  if (a.imag() != b.imag()) return a.imag() < b.imag();
  if (std::signbit(a.real()) != std::signbit(b.real())) return std::signbit(a.real());
  return std::signbit(a.imag()) && !std::signbit(b.imag());
}

}  // namespace

GammaPoint symmetrize(std::span<const cplx> z) {
  std::vector<cplx> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  const int n = static_cast<int>(sorted.size());
  std::vector<cplx> e(static_cast<std::size_t>(n) + 1, cplx(0.0, 0.0));
  e[0] = 1.0;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k >= 1; --k) {
      e[static_cast<std::size_t>(k)] += sorted[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(k) - 1];
    }
  }
  return GammaPoint{n, std::vector<cplx>(e.begin() + 1, e.end())};
}

std::vector<cplx> gamma_roots(const GammaPoint& pt) {
  const int n = pt.n;
  if (n <= 0 || static_cast<int>(pt.coords.size()) != n) {
    throw LabError(ErrorCode::InvalidArgument, "GammaPoint must carry n coordinates");
  }
  // Monic polynomial coefficients c_k = (-1)^k e_k of t^{n-k}.
  CMatrix comp = CMatrix::Zero(n, n);
  double scale = 1.0;
  for (int k = 1; k <= n; ++k) {
    const cplx ck = (k % 2 == 0 ? 1.0 : -1.0) * pt.coords[static_cast<std::size_t>(k) - 1];
    comp(0, k - 1) = -ck;
    scale = std::max(scale, std::abs(ck));
  }
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  if (es.info() != Eigen::Success) {
    throw LabError(ErrorCode::RootFindingFailed, "companion eigenvalue solver did not converge");
  }
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);

  // Single-linkage clustering; an m-fold root splits by about (eps * scale)^{1/m}.
  const double eps = std::numeric_limits<double>::epsilon() * scale;
  const double link = 10.0 * std::pow(eps, 1.0 / n);
  std::vector<int> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        auto& li = label[static_cast<std::size_t>(i)];
        auto& lj = label[static_cast<std::size_t>(j)];
        if (li != lj && std::abs(roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)]) <= link) {
          const int m = std::min(li, lj);
          const int old = std::max(li, lj);
          for (auto& l : label) {
            if (l == old) l = m;
          }
          changed = true;
        }
      }
    }
  }
  std::vector<cplx> out = roots;
  for (int c = 0; c < n; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < label.size(); ++i) {
      if (label[i] == c) members.push_back(i);
    }
    if (members.size() < 2) continue;
    cplx centroid(0.0, 0.0);
    for (auto i : members) centroid += roots[i];
    centroid /= static_cast<double>(members.size());
    double radius = 0.0;
    for (auto i : members) radius = std::max(radius, std::abs(roots[i] - centroid));
    if (radius <= 10.0 * std::pow(eps, 1.0 / static_cast<double>(members.size()))) {
      for (auto i : members) out[i] = centroid;
    }
  }
  return out;
}

Membership in_gamma(const GammaPoint& pt, const Tolerances& tol) {
  double rmax = 0.0;
  for (const auto& r : gamma_roots(pt)) rmax = std::max(rmax, std::abs(r));
  return {rmax <= 1.0 + tol.cert_tol, rmax - 1.0};
}

bool in_bgamma(const GammaPoint& pt, const Tolerances& tol) {
  if (!in_gamma(pt, tol).member) return false;
  return std::abs(std::abs(pt.coords.back()) - 1.0) <= tol.cert_tol;
}

cplx unit_root(long k, long resolution) {
  if (resolution <= 0) throw LabError(ErrorCode::InvalidArgument, "resolution must be positive");
  k %= resolution;
  if (k < 0) k += resolution;
  if ((4 * k) % resolution == 0) {
    switch ((4 * k) / resolution) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(resolution);
  return {std::cos(theta), std::sin(theta)};
}

std::vector<TorusPoint> torus_grid(int n, int resolution, std::size_t cap) {
  if (n < 1 || resolution < 2) {
    throw LabError(ErrorCode::InvalidArgument, "torus_grid needs n >= 1 and resolution >= 2");
  }
  double size = std::pow(static_cast<double>(resolution), n);
  if (size > static_cast<double>(cap)) {
    throw LabError(ErrorCode::GridTooLarge,
                   std::to_string(resolution) + "^" + std::to_string(n) + " points exceed the cap");
  }
  std::vector<cplx> roots(static_cast<std::size_t>(resolution));
  for (int k = 0; k < resolution; ++k) roots[static_cast<std::size_t>(k)] = unit_root(k, resolution);
  std::vector<TorusPoint> out;
  out.reserve(static_cast<std::size_t>(size));
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    TorusPoint p(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(j)] = roots[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
    out.push_back(std::move(p));
    int j = n - 1;
    while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == resolution) {
      idx[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

std::vector<TorusPoint> torus_subsample(int n, int resolution, std::size_t count, std::uint64_t seed) {
  if (n < 1 || resolution < 2) {
    throw LabError(ErrorCode::InvalidArgument, "torus_subsample needs n >= 1 and resolution >= 2");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(0, resolution - 1);
  std::vector<TorusPoint> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    TorusPoint p(static_cast<std::size_t>(n));
    for (auto& z : p) z = unit_root(pick(rng), resolution);
    out.push_back(std::move(p));
  }
  return out;
}

std::size_t torus_orbit_count(int n, int resolution) {
  // C(resolution + n - 1, n)
  double c = 1.0;
  for (int i = 1; i <= n; ++i) c = c * static_cast<double>(resolution - 1 + i) / i;
  return static_cast<std::size_t>(std::llround(c));
}

std::vector<std::vector<int>> torus_orbit_indices(int n, int resolution, std::size_t cap) {
  if (n < 1 || resolution < 2) {
    throw LabError(ErrorCode::InvalidArgument, "torus_orbit_indices needs n >= 1 and resolution >= 2");
  }
  if (torus_orbit_count(n, resolution) > cap) {
    throw LabError(ErrorCode::GridTooLarge, "orbit grid of " + std::to_string(torus_orbit_count(n, resolution)) +
                                                " points exceeds the cap");
  }
  std::vector<std::vector<int>> out;
  out.reserve(torus_orbit_count(n, resolution));
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(idx);
    int j = n - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == resolution - 1) --j;
    if (j < 0) break;
    ++idx[static_cast<std::size_t>(j)];
    for (int l = j + 1; l < n; ++l) idx[static_cast<std::size_t>(l)] = idx[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace gammalab
