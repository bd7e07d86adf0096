#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gammalab/polynomial.hpp"
#include "gammalab/tuple.hpp"

namespace gammalab {

struct ProbeConfig {
  int degree = 3;
  int samples = 200;
  int resolution = 24;
  std::uint64_t seed = 0;
  std::size_t grid_cap = kDefaultGridCap;
  bool refine = true;
};

struct VnVerdict {
  bool falsified = false;
  std::optional<Polynomial> witness;
  std::size_t witness_index = 0;
  double witness_ratio = 0.0;
  double max_ratio = 0.0;
  std::size_t polynomials_tested = 0;

  std::string label() const { return falsified ? "falsified" : "not_falsified"; }
};

// A fixed family of test polynomials in n symmetrized variables together with
// estimates of their sup norms over the distinguished boundary. The family starts
// with the coordinates and the power sums of the underlying torus variables, then
// `samples` complex Gaussian polynomials of total degree <= degree.
class SupNormProbe {
 public:
  SupNormProbe(int n, const ProbeConfig& cfg);

  int n() const { return n_; }
  const ProbeConfig& config() const { return cfg_; }
  const std::vector<Polynomial>& polynomials() const { return polys_; }
  const std::vector<double>& sup_estimates() const { return sups_; }

  // ops = (S_1, ..., S_{n-1}, P). Ratio of operator norm to the sup estimate per polynomial.
  VnVerdict test(std::span<const CMatrix> ops, const Tolerances& tol) const;
  VnVerdict test(const GammaTuple& g, const Tolerances& tol) const;

 private:
  double refine_sup(std::size_t poly, std::vector<double> theta, double start) const;

  int n_;
  ProbeConfig cfg_;
  std::vector<Exponent> exps_;
  std::vector<Polynomial> polys_;
  CMatrix coeffs_;  // polynomials x monomials
  std::vector<double> sups_;
};

VnVerdict vn_falsify(const GammaTuple& g, const ProbeConfig& cfg, const Tolerances& tol);

}  // namespace gammalab
