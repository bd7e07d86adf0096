#include "gammalab/polynomial.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

namespace gammalab {

Polynomial Polynomial::constant(int nvars, cplx c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::coordinate(int nvars, int j) {
  if (j < 0 || j >= nvars) throw LabError(ErrorCode::InvalidArgument, "coordinate index out of range");
  Exponent e(nvars, 0);
  e[j] = 1;
  Polynomial p(nvars);
  p.add_term(e, 1.0);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const Exponent& e, cplx c) {
  if (static_cast<int>(e.size()) != nvars_) {
    throw LabError(ErrorCode::DimensionMismatch, "exponent length does not match variable count");
  }
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) it->second += c;
  if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
}

cplx Polynomial::eval(std::span<const cplx> x) const {
  if (static_cast<int>(x.size()) != nvars_) {
    throw LabError(ErrorCode::DimensionMismatch, "point has wrong number of coordinates");
  }
  cplx sum(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    cplx m = c;
    for (int j = 0; j < nvars_; ++j) {
      for (int k = 0; k < e[j]; ++k) m *= x[j];
    }
    sum += m;
  }
  return sum;
}

CMatrix Polynomial::eval(std::span<const CMatrix> ops) const {
  if (static_cast<int>(ops.size()) != nvars_ || ops.empty()) {
    throw LabError(ErrorCode::DimensionMismatch, "operator list has wrong length");
  }
  const Index dim = ops[0].rows();
  const int d = degree();
  std::vector<std::vector<CMatrix>> pw(nvars_);
  for (int j = 0; j < nvars_; ++j) {
    pw[j].push_back(CMatrix::Identity(dim, dim));
    for (int k = 1; k <= d; ++k) pw[j].push_back(pw[j].back() * ops[j]);
  }
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const auto& [e, c] : terms_) {
    CMatrix m = CMatrix::Identity(dim, dim);
    for (int j = 0; j < nvars_; ++j) {
      if (e[j] > 0) m = m * pw[j][e[j]];
    }
    sum += c * m;
  }
  return sum;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw LabError(ErrorCode::DimensionMismatch, "variable count mismatch");
  Polynomial r(nvars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e(nvars_);
      for (int j = 0; j < nvars_; ++j) e[j] = e1[j] + e2[j];
      r.add_term(e, c1 * c2);
    }
  }
  return r;
}

Polynomial Polynomial::operator*(cplx c) const {
  Polynomial r(nvars_);
  for (const auto& [e, v] : terms_) r.add_term(e, v * c);
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[96];
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
    out += buf;
    for (int j = 0; j < nvars_; ++j) {
      if (e[j] == 0) continue;
      out += "*x" + std::to_string(j + 1);
      if (e[j] > 1) out += "^" + std::to_string(e[j]);
    }
  }
  return out;
}

std::vector<Exponent> monomial_exponents(int nvars, int max_degree) {
  std::vector<Exponent> out;
  Exponent cur(nvars, 0);
  for (int deg = 0; deg <= max_degree; ++deg) {
    std::function<void(int, int)> rec = [&](int var, int left) {
      if (var == nvars - 1) {
        cur[var] = left;
        out.push_back(cur);
        return;
      }
      for (int k = left; k >= 0; --k) {
        cur[var] = k;
        rec(var + 1, left - k);
      }
    };
    if (nvars == 0) {
      if (deg == 0) out.push_back(cur);
      continue;
    }
    rec(0, deg);
  }
  return out;
}

std::vector<cplx> eval_monomials(std::span<const Exponent> exps, std::span<const cplx> x, int max_degree) {
  const std::size_t nv = x.size();
  std::vector<cplx> pw(nv * (max_degree + 1));
  for (std::size_t j = 0; j < nv; ++j) {
    pw[j * (max_degree + 1)] = 1.0;
    for (int k = 1; k <= max_degree; ++k) pw[j * (max_degree + 1) + k] = pw[j * (max_degree + 1) + k - 1] * x[j];
  }
  std::vector<cplx> out(exps.size());
  for (std::size_t m = 0; m < exps.size(); ++m) {
    cplx v = 1.0;
    for (std::size_t j = 0; j < nv; ++j) {
      if (exps[m][j] > 0) v *= pw[j * (max_degree + 1) + exps[m][j]];
    }
    out[m] = v;
  }
  return out;
}

Polynomial power_sum(int n, int k) {
  if (n < 1 || k < 1) throw LabError(ErrorCode::InvalidArgument, "power_sum needs n >= 1 and k >= 1");
  // Newton: p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k, e_i = 0 for i > n.
  std::vector<Polynomial> p(k + 1, Polynomial(n));
  auto e = [n](int i) { return i <= n ? Polynomial::coordinate(n, i - 1) : Polynomial(n); };
  for (int m = 1; m <= k; ++m) {
    Polynomial acc(n);
    for (int i = 1; i < m; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc = acc + (e(i) * p[m - i]) * cplx(sign, 0.0);
    }
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    acc = acc + e(m) * cplx(sign * m, 0.0);
    p[m] = acc;
  }
  return p[k];
}

}  // namespace gammalab
