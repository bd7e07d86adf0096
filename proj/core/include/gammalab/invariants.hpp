#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gammalab/gammaops.hpp"

namespace gammalab {

// Samples of Theta_P(z): D_P -> D_{P*} in the two defect bases, plus Delta_P(t) samples.
struct CharFnGrid {
  std::vector<cplx> points;
  std::vector<CMatrix> values;
  std::vector<double> delta_t;
  std::vector<CMatrix> delta;
  std::size_t delta_skipped = 0;
  double max_norm = 0.0;
  double origin_residual = 0.0;  // ||Theta(0) + P|_{D_P}|| when 0 is on the grid
};

// Theta in the default defect bases of defect_pair(P).
CharFnGrid char_fn(const CMatrix& p, std::span<const cplx> grid, const Tolerances& tol, int delta_samples = 0);

// Theta with explicit orthonormal bases for D_P (domain) and D_{P*} (codomain).
CharFnGrid char_fn(const CMatrix& p, const CMatrix& domain_basis, const CMatrix& codomain_basis,
                   std::span<const cplx> grid, const Tolerances& tol, int delta_samples = 0);

// `count` points on the circle of the given radius, optionally preceded by 0.
std::vector<cplx> disc_grid(int count, double radius, bool with_origin);

// 0 plus 32 points on the circle of radius 0.9.
std::vector<cplx> coincidence_grid();

struct CharTuple {
  FundamentalTuple F;
  CharFnGrid theta;
};

// F_O-tuples of g and of its adjoint together with Theta in the matching bases.
struct CharData {
  CharTuple ct;
  FundamentalTuple fadj;
};

CharData char_data(const GammaTuple& g, std::span<const cplx> grid, const Tolerances& tol);

struct CoincidenceConfig {
  int restarts = 4;
  std::uint64_t seed = 0;
  int max_iter = 400;
  bool force_procrustes = false;  // keep solving after a falsifier fires
};

struct CoincidenceResult {
  bool certified = false;
  CMatrix u;
  CMatrix u_star;
  double residual = 0.0;
  double threshold = 0.0;
  std::string falsifier;  // empty when no falsifier fired
  double falsifier_gap = 0.0;
  std::size_t nullspace_dim = 0;
  int best_start = -1;  // -1 when the unrefined nullspace candidate wins

  std::string label() const {
    if (certified) return "certified";
    return falsifier.empty() ? "no_certificate (inconclusive)" : "no_certificate";
  }
};

CoincidenceResult coincidence_solve(const CharTuple& ct, const CharTuple& ct2, const FundamentalTuple& badj,
                                    const FundamentalTuple& badj2, const Tolerances& tol,
                                    const CoincidenceConfig& cfg = {});

struct EquivalenceVerdict {
  CoincidenceResult coincidence;
  std::optional<CMatrix> U;
  double s_residual = 0.0;  // max_i ||U S_i - S_i' U||
  double p_residual = 0.0;  // ||U P - P' U||
  double unitary_residual = 0.0;
  bool confirmed = false;

  bool equivalent() const { return coincidence.certified && confirmed; }
  std::string label() const { return equivalent() ? "equivalent" : coincidence.label(); }
};

// Requires ||S_i* P - P S_i*|| <= eq_tol (1 + ||S_i||) on both tuples.
EquivalenceVerdict decide_equivalence(const GammaTuple& g, const GammaTuple& g2, const Tolerances& tol,
                                      const CoincidenceConfig& cfg = {});

}  // namespace gammalab
