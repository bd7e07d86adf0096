#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gammalab/gammaops.hpp"

namespace gammalab {

// Half-open coordinate range [begin, end).
struct CoordinateWindow {
  Index begin = 0;
  Index end = 0;
};

struct AsymptoticOptions {
  // Measure Cauchy increments only on this window. Used for finite sections of
  // operators whose truncation edge would otherwise drive every power to zero.
  std::optional<CoordinateWindow> window;
  std::optional<int> max_iter;
  bool check_cnu = true;
};

struct AsymptoticData {
  CMatrix A_lim;       // lim P*^k P^k
  CMatrix Astar_lim;   // lim P^k P*^k
  CMatrix A_half;      // A_lim^{1/2}
  Subspace ranA;
  CMatrix V_r;         // V on ran A in the ranA basis
  CMatrix Q_r;         // (I - A^{1/2} A_* A^{1/2})^{1/2} on ran A
  int iterations_used = 0;
  int iterations_used_star = 0;
  double last_increment = 0.0;
  double last_increment_star = 0.0;
  bool windowed = false;

  // With a window, the next two are restricted to window coordinates that P keeps in the window.
  double fixed_point_residual = 0.0;   // ||P* A P - A||
  double v_isometry_residual = 0.0;    // ||V_r* V_r - I||
  double qv_commutator = 0.0;          // ||Q_r V_r - V_r Q_r||
  double qvstar_commutator = 0.0;      // ||Q_r V_r* - V_r* Q_r||
  double monotonicity_violation = 0.0; // max increase between consecutive increments
};

AsymptoticData asymptotic_limits(const CMatrix& p, const Tolerances& tol, const AsymptoticOptions& opts = {});

struct ModelDepths {
  int fourier = 40;
  int laurent = 40;
};

// W1 stacks the coefficients D_P P^k (k = 0..fourier); W2 stacks
// D_{P*} A^{1/2} Q^{-1} V^k A^{1/2} for k = -laurent..laurent (V*^{|k|} when k < 0).
// Coefficients are kept as operators on the ambient space.
struct ModelEmbedding {
  ModelDepths depths;
  CMatrix W1;
  CMatrix W2;
  Subspace H0;
  double tail_bound = 0.0;
  double commutation_residual = 0.0;
  bool relaxed = false;
};

ModelEmbedding build_embedding(const GammaTuple& g, const AsymptoticData& ad, const ModelDepths& depths,
                               const Tolerances& tol, bool relaxed = false);

struct ModelReport {
  std::vector<double> w1_residual;
  std::vector<double> w2_residual;
  double p_w1_residual = 0.0;
  double p_w2_residual = 0.0;
  bool relaxed = false;
  std::string label;
};

// F and Fadj are the F_O-tuples of g and of its adjoint.
ModelReport verify_model(const GammaTuple& g, const ModelEmbedding& me, const FundamentalTuple& f,
                         const FundamentalTuple& fadj, const Tolerances& tol);

struct Lemma1Report {
  std::vector<double> range_identity;
  std::vector<double> adjoint_identity;
};

// With `interior`, the range identity is tested on the projections onto ran A of the
// coordinate vectors in the window instead of on the whole range.
Lemma1Report lemma1_check(const GammaTuple& g, const FundamentalTuple& fadj, const AsymptoticData& ad,
                          const Tolerances& tol, std::optional<CoordinateWindow> interior = std::nullopt);

struct Example1Report {
  Index m = 0;
  int n = 0;
  double alpha = 0.0;
  double gap = 0.0;        // ||D_{P*} S_1 A e_1 - D_{P*} A S_1 e_1||
  double model_gap = 0.0;  // constant terms of the W2-side model versus W2 S_1, at e_1
  double expected_gap = 0.0;
  std::vector<std::pair<std::string, double>> closed_form_residuals;
  double fo_a1_residual = 0.0;
  double w1_residual = 0.0;
  double w2_residual = 0.0;
  Lemma1Report lemma1;
  std::string label;
};

// T e_1 = alpha e_2, T e_j = e_{j+1} (truncated at m), P = T^2, S the symmetrization of (I, ..., I, T, T).
GammaTuple example1_tuple(Index m, int n, double alpha);

Example1Report example1_counterexample(Index m, int n, double alpha, const Tolerances& tol,
                                       const ModelDepths& depths = {});

}  // namespace gammalab
