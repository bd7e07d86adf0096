#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "gammalab/matcore.hpp"

namespace gammalab {

using Exponent = std::vector<int>;

// Polynomial in nvars commuting variables with complex coefficients.
class Polynomial {
 public:
  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(int nvars, cplx c);
  static Polynomial coordinate(int nvars, int j);

  int nvars() const { return nvars_; }
  int degree() const;
  const std::map<Exponent, cplx>& terms() const { return terms_; }

  void add_term(const Exponent& e, cplx c);

  cplx eval(std::span<const cplx> x) const;
  CMatrix eval(std::span<const CMatrix> ops) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cplx c) const;

  std::string to_string() const;

 private:
  int nvars_;
  std::map<Exponent, cplx> terms_;
};

// All exponents of total degree <= max_degree, ordered by degree then lexicographically descending.
std::vector<Exponent> monomial_exponents(int nvars, int max_degree);

// Values of x^e for every exponent, sharing coordinate powers.
std::vector<cplx> eval_monomials(std::span<const Exponent> exps, std::span<const cplx> x, int max_degree);

// Power sum z_1^k + ... + z_n^k written in the symmetrized coordinates (s_1, ..., s_{n-1}, p).
Polynomial power_sum(int n, int k);

}  // namespace gammalab
