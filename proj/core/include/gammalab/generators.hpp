#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gammalab/tuple.hpp"

namespace gammalab {

// Symmetrization of (I, ..., I, T_1, T_2) where T_1 = f(T), T_2 = g(T) for a
// random contraction T and random quadratic polynomials f, g (norms scaled to 0.95).
GammaTuple gen_symmetrized_ando(Index dim, int n, std::uint64_t seed);

enum class DiagonalMode {
  closed,      // each coordinate unimodular with probability 1/4, else uniform in the disc
  interior,    // uniform in the disc of radius 0.95
  unimodular,  // all coordinates on the circle
};

std::string to_string(DiagonalMode m);
DiagonalMode diagonal_mode_from_string(const std::string& s);

GammaTuple gen_diagonal_normal(Index dim, int n, std::uint64_t seed, DiagonalMode mode = DiagonalMode::closed);

// Diagonal tuple whose k-th joint eigenvalue is symmetrize(points[k]).
GammaTuple diagonal_from_points(const std::vector<std::vector<cplx>>& points);

}  // namespace gammalab
