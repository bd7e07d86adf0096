#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gammalab/gammaops.hpp"

namespace gammalab {

// phi(z) = c0 + c1 z on C^k.
struct PencilSymbol {
  CMatrix c0;
  CMatrix c1;

  Index size() const { return c0.rows(); }
};

// Finite section of T_phi on H^2 (x) C^k truncated to degrees 0..depth.
struct ToeplitzTrunc {
  PencilSymbol symbol;
  int depth = 0;
  CMatrix matrix;
};

ToeplitzTrunc toeplitz(const PencilSymbol& symbol, int depth);

// M_z on H^2 (x) C^k truncated to degrees 0..depth.
CMatrix shift_section(Index k, int depth);

struct PureCheckConfig {
  int depth = 8;
  int resolution = 16;
  ProbeConfig probe;
};

struct PureIsometryVerdict {
  bool passed = false;
  double max_commutator = 0.0;
  double algebra_residual = 0.0;  // ||(T_{phi_i} - T_{phi_{n-i}}* T_z)|interior||
  std::string failed;             // "", "commutation", "algebra" or "pencil"
  std::optional<cplx> failing_z;
  double max_ratio = 0.0;
  std::optional<VnVerdict> evidence;
  std::size_t pencils_tested = 0;
};

// Symbols phi_i = F_i* + F_{n-i} z for F = (F_1, ..., F_{n-1}).
PureIsometryVerdict pure_gamma_isometry_check(std::span<const CMatrix> F, const PureCheckConfig& cfg,
                                              const Tolerances& tol);

struct MatrixPolynomial {
  std::vector<CMatrix> coeffs;  // Theta(z) = sum_k coeffs[k] z^k

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Index rows() const { return coeffs.front().rows(); }
  Index cols() const { return coeffs.front().cols(); }
  CMatrix eval(cplx z) const;
};

// Lower block-triangular finite section of M_Theta, degrees 0..depth on both sides.
CMatrix multiplication_section(const MatrixPolynomial& theta, int depth);

struct BlhResult {
  std::vector<CMatrix> B;
  double structure_residual = 0.0;
  double consistency_residual = 0.0;  // diagonal versus subdiagonal reading of B_{n-i}
  double inner_residual = 0.0;
  double intertwining_residual = 0.0;
  double range_invariance_residual = 0.0;
  double depth_stability = 0.0;  // B at depth versus B at 2 depth
  int interior_blocks = 0;
};

// Given inner Theta: C^r -> C^k and A_1..A_{n-1} on C^k, extracts B_i on C^r with
// (A_i* + z A_{n-i}) Theta(z) = Theta(z) (B_i + z B_{n-i}*).
BlhResult blh_intertwine(const MatrixPolynomial& theta, std::span<const CMatrix> A, int depth,
                         const Tolerances& tol, int grid = 32);

}  // namespace gammalab
