#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gammalab/matcore.hpp"

namespace gammalab {

// Raw coordinates (s_1, ..., s_{n-1}, p); no membership claim.
struct GammaPoint {
  int n = 0;
  std::vector<cplx> coords;
};

struct Membership {
  bool member = false;
  double margin = 0.0;  // max |root| - 1
};

inline constexpr std::size_t kDefaultGridCap = 1'000'000;

// Elementary symmetric polynomials of z. Inputs are put in a canonical order
// first so the result is bit-identical under permutation.
GammaPoint symmetrize(std::span<const cplx> z);

// Roots of t^n - s_1 t^{n-1} + ... + (-1)^n p, with numerically multiple roots
// merged to their cluster centroid.
std::vector<cplx> gamma_roots(const GammaPoint& pt);

Membership in_gamma(const GammaPoint& pt, const Tolerances& tol);
bool in_bgamma(const GammaPoint& pt, const Tolerances& tol);

// exp(2 pi i k / resolution), exact at quarter turns.
cplx unit_root(long k, long resolution);

using TorusPoint = std::vector<cplx>;

std::vector<TorusPoint> torus_grid(int n, int resolution, std::size_t cap = kDefaultGridCap);
std::vector<TorusPoint> torus_subsample(int n, int resolution, std::size_t count, std::uint64_t seed);

// Index tuples k_1 <= ... <= k_n of the tensor grid: one representative per
// permutation orbit, enough for symmetric functions. The cap applies to this count.
std::vector<std::vector<int>> torus_orbit_indices(int n, int resolution,
                                                  std::size_t cap = kDefaultGridCap);

std::size_t torus_orbit_count(int n, int resolution);

}  // namespace gammalab
