#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gammalab/probe.hpp"
#include "gammalab/tuple.hpp"

namespace gammalab {

struct DefectPair {
  CMatrix D;       // (I - P*P)^{1/2}
  CMatrix Dstar;   // (I - PP*)^{1/2}
  Subspace space;
  Subspace space_star;
  double intertwining_residual = 0.0;  // ||P D_P - D_{P*} P||
};

// Eigenvalues of I - P*P below the rounding floor are treated as zero so that
// unitary directions give an exactly trivial defect.
DefectPair defect_pair(const CMatrix& p, const Tolerances& tol);

// Operators A_1, ..., A_{n-1} on the defect space, in the basis `defect.basis`.
struct FundamentalTuple {
  Subspace defect;
  std::vector<CMatrix> A;
  std::vector<double> residuals;        // ||D_P A_i D_P - (S_i - S_{n-i}* P)||
  std::vector<double> leakage;          // ||(I - BB*)(S_i - S_{n-i}* P)||
  std::vector<double> adjoint_leakage;  // ||(S_i - S_{n-i}* P)(I - BB*)||
  bool leakage_detected = false;
  double condition = 1.0;

  int n() const { return static_cast<int>(A.size()) + 1; }
  Index defect_dim() const { return defect.dim(); }
  const CMatrix& a(int i) const { return A.at(static_cast<std::size_t>(i - 1)); }
  // A_i as an operator on the ambient space.
  CMatrix embedded(int i) const { return defect.basis * a(i) * defect.basis.adjoint(); }
};

FundamentalTuple fo_tuple(const GammaTuple& g, const Tolerances& tol,
                          std::optional<std::uint64_t> basis_seed = std::nullopt);
FundamentalTuple fo_tuple(const GammaTuple& g, const DefectPair& dp, const Tolerances& tol,
                          std::optional<std::uint64_t> basis_seed = std::nullopt);

// ||D_P S_i - (A_i D_P + A_{n-i}* D_P P)|| per i.
std::vector<double> verify_fundamental_identity(const GammaTuple& g, const FundamentalTuple& f,
                                                const Tolerances& tol);

// Contraction test for a tuple of degree n, exact (operator norm) when n = 1.
VnVerdict contraction_probe(const GammaTuple& g, const SupNormProbe* probe, const Tolerances& tol);

struct SufficiencyVerdict {
  bool certified = false;
  std::string failed_condition;  // "", "sigma1", "sigma2" or "scaled"
  std::optional<cplx> failing_z;
  VnVerdict evidence;
  double max_ratio = 0.0;
  std::size_t tuples_tested = 0;

  std::string label() const {
    return certified ? "sufficiency certified modulo sampling" : "falsified at " + failed_condition;
  }
};

SufficiencyVerdict sufficient_condition_check(const GammaTuple& g, const FundamentalTuple& f,
                                              const FundamentalTuple& fadj, const Tolerances& tol,
                                              int resolution, const ProbeConfig& probe = {});

enum class Classification { gamma_unitary, gamma_isometry, gamma_contraction_not_falsified, falsified };

std::string to_string(Classification c);

struct ClassifyResult {
  Classification kind = Classification::gamma_contraction_not_falsified;
  double normal_residual = 0.0;
  Check unitary;
  Check isometry;
  std::vector<JointEigenvalue> joint_spectrum;
  bool spectrum_in_bgamma = false;
  std::optional<VnVerdict> vn;
};

ClassifyResult classify(const GammaTuple& g, const Tolerances& tol, const ProbeConfig& probe = {});

struct CnuSplit {
  Subspace unitary_space;
  Subspace cnu_space;
  GammaTuple unitary_part;
  GammaTuple cnu_part;
  double reducing_residual = 0.0;
};

Subspace unitary_subspace(const CMatrix& p, const Tolerances& tol);
CnuSplit cnu_part(const GammaTuple& g, const Tolerances& tol);

}  // namespace gammalab
