#pragma once

#include <span>
#include <vector>

#include "gammalab/matcore.hpp"
#include "gammalab/polydisc.hpp"

namespace gammalab {

// Commuting tuple (S_1, ..., S_{n-1}, P) on C^dim.
struct GammaTuple {
  int n = 0;
  std::vector<CMatrix> S;
  CMatrix P;

  Index dim() const { return P.rows(); }
  // 1-based access, i in 1..n-1.
  const CMatrix& s(int i) const { return S.at(static_cast<std::size_t>(i - 1)); }
  std::vector<CMatrix> operators() const;
  GammaTuple adjoint() const;
};

struct TupleDiagnostics {
  bool shapes_ok = false;
  bool finite = false;
  double max_commutator = 0.0;
  bool commuting = false;
  double p_norm = 0.0;
  bool p_contraction = false;
};

TupleDiagnostics diagnose(const GammaTuple& g, const Tolerances& tol);

// Throws DimensionMismatch, InvalidArgument, NotCommuting or NotContraction.
void validate(const GammaTuple& g, const Tolerances& tol, bool require_contraction = true);

GammaTuple scalar_tuple(const GammaPoint& pt);
GammaTuple conjugate(const GammaTuple& g, const CMatrix& u);  // u G u*
GammaTuple compress(const GammaTuple& g, const Subspace& s);  // basis* G basis
GammaTuple direct_sum(const GammaTuple& a, const GammaTuple& b);

// Elementary symmetric polynomials of commuting operators T_1, ..., T_n.
GammaTuple symmetrize_operators(std::span<const CMatrix> ops);

// Entries (n-j)/n (c0_j + z c1_j), j = 1..n-1, as a tuple of degree n-1.
GammaTuple weighted_pencil(std::span<const CMatrix> c0, std::span<const CMatrix> c1, cplx z);

}  // namespace gammalab
