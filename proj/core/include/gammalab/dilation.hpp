#pragma once

#include <vector>

#include "gammalab/gammaops.hpp"
#include "gammalab/hardy.hpp"

namespace gammalab {

// Block operators on H (+) D_P^N, defect copies in the coordinates of the defect basis.
struct DilationTuple {
  GammaTuple base;
  int depth = 0;
  Index defect_dim = 0;
  std::vector<CMatrix> R;
  CMatrix V;
  Subspace embed;
  CMatrix defect_basis;

  // Residuals on H (+) D_P^{N-1}, one block away from the truncation edge.
  double interior_isometry_residual = 0.0;
  double interior_commutator_residual = 0.0;
  double interior_algebra_residual = 0.0;

  Index total_dim() const { return V.rows(); }
  Index interior_dim() const { return base.dim() + (depth - 1) * defect_dim; }
};

DilationTuple schaffer_dilate(const GammaTuple& g, const FundamentalTuple& f, int depth, const Tolerances& tol);

struct CompressionReport {
  int max_degree = 0;
  std::size_t monomials = 0;
  double max_residual = 0.0;
  Exponent worst_monomial;
  double algebra_residual = 0.0;
  double interior_isometry_residual = 0.0;
  bool passed = false;
};

// Compares P_H q(R, V)|_H with q(S, P) for every monomial of total degree <= max_degree <= N/2.
CompressionReport verify_dilation(const DilationTuple& d, int max_degree, const Tolerances& tol);

struct MinimalityReport {
  Index krylov_rank = 0;
  Index space_dim = 0;
  bool full = false;
};

// Rank of span{V^k H : k = 0..N} inside the truncated dilation space.
MinimalityReport minimality_report(const DilationTuple& d, const Tolerances& tol);

struct RepresentationSplit {
  std::vector<CMatrix> C;
  std::vector<double> per_index;
  double residual = 0.0;
  double alpha = 0.5;
  int series_terms = 0;
};

// C_i = sum_m P^m E_i P*^m + w_i Pi_u S_i Pi_u, where E_i = P_H (R_i - V R_{n-i}*)|_H and
// Pi_u projects onto the unitary part of P. Weights are w_i = alpha for i < n - i,
// 1 - alpha for i > n - i and 1/2 for i = n - i.
RepresentationSplit representation_split(const DilationTuple& d, const Tolerances& tol, double alpha = 0.5);

struct WExtraction {
  std::vector<CMatrix> W;
  CMatrix Wiso;
  std::vector<CMatrix> A_recovered;
  double recovery_residual = 0.0;
  double embedding_isometry_residual = 0.0;
  double tail_isometry_residual = 0.0;
};

WExtraction extract_W(const DilationTuple& d, const FundamentalTuple& f, const Tolerances& tol);

PureIsometryVerdict necessary1_check(const FundamentalTuple& fadj, const PureCheckConfig& cfg, const Tolerances& tol);

}  // namespace gammalab
