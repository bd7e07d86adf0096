#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "gammalab/polydisc.hpp"
#include "gammalab/polynomial.hpp"
#include "oracles.hpp"

using namespace gammalab;

namespace {

std::vector<cplx> random_disc_points(std::size_t n, std::mt19937_64& rng, double unimodular_prob) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> z;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = u(rng) < unimodular_prob ? 1.0 : std::sqrt(u(rng));
    z.push_back(std::polar(r, 2.0 * std::numbers::pi * u(rng)));
  }
  return z;
}

}  // namespace

TEST_CASE("symmetrize on fixed points") {
  const std::vector<cplx> zeros(4, 0.0);
  for (const cplx& c : symmetrize(zeros).coords) CHECK(c == cplx(0.0));
  const std::vector<cplx> ones(3, 1.0);
  const GammaPoint one = symmetrize(ones);
  CHECK(one.coords[0] == cplx(3.0));
  CHECK(one.coords[1] == cplx(3.0));
  CHECK(one.coords[2] == cplx(1.0));
  const std::vector<cplx> z{0.5, -0.5, cplx(0.0, 1.0)};
  const GammaPoint pt = symmetrize(z);
  const auto poly = oracle::monic_from_roots(z);
  for (std::size_t k = 0; k < 3; ++k) {
    const double sign = k % 2 == 0 ? -1.0 : 1.0;
    CHECK(std::abs(pt.coords[k] - sign * poly[k + 1]) <= 1e-15);
  }
  CHECK(std::abs(pt.coords[0] - cplx(0.0, 1.0)) <= 1e-15);
  CHECK(std::abs(pt.coords[1] - cplx(-0.25, 0.0)) <= 1e-15);
  CHECK(std::abs(pt.coords[2] - cplx(0.0, -0.25)) <= 1e-15);
}

TEST_CASE("symmetrize matches subset enumeration and is permutation invariant") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> z = random_disc_points(2 + trial % 5, rng, 0.3);
    const GammaPoint pt = symmetrize(z);
    const auto e = oracle::elementary_symmetric(z);
    for (std::size_t k = 0; k < e.size(); ++k) CHECK(std::abs(pt.coords[k] - e[k]) <= 1e-13);
    std::vector<cplx> w = z;
    std::shuffle(w.begin(), w.end(), rng);
    const GammaPoint q = symmetrize(w);
    for (std::size_t k = 0; k < e.size(); ++k) CHECK(q.coords[k] == pt.coords[k]);
  }
}

TEST_CASE("membership examples") {
  const Tolerances tol;
  GammaPoint origin{3, {0.0, 0.0, 0.0}};
  const Membership m0 = in_gamma(origin, tol);
  CHECK(m0.member);
  CHECK(m0.margin == doctest::Approx(-1.0));
  CHECK_FALSE(in_bgamma(origin, tol));
  GammaPoint ones{3, {3.0, 3.0, 1.0}};
  const Membership m1 = in_gamma(ones, tol);
  CHECK(m1.member);
  CHECK(std::abs(m1.margin) <= 1e-8);
  CHECK(in_bgamma(ones, tol));
  GammaPoint outside{3, {3.3, 3.0, 1.0}};
  const Membership m2 = in_gamma(outside, tol);
  CHECK_FALSE(m2.member);
  CHECK(m2.margin > 0.0);
}

TEST_CASE("roots of symmetrized points are recovered") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<cplx> z = random_disc_points(2 + trial % 4, rng, 0.0);
    std::vector<cplx> r = gamma_roots(symmetrize(z));
    REQUIRE(r.size() == z.size());
    for (const cplx& zi : z) {
      double best = 1e9;
      for (const cplx& ri : r) best = std::min(best, std::abs(ri - zi));
      CHECK(best <= 1e-8);
    }
  }
}

TEST_CASE("closed polydisc maps into the symmetrized polydisc") {
  const Tolerances tol;
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<cplx> z = random_disc_points(2 + trial % 5, rng, 0.25);
    const GammaPoint pt = symmetrize(z);
    CHECK(in_gamma(pt, tol).member);
    const bool all_unimodular = std::all_of(z.begin(), z.end(), [](cplx c) { return std::abs(std::abs(c) - 1.0) < 1e-12; });
    CHECK(in_bgamma(pt, tol) == all_unimodular);
  }
}

TEST_CASE("torus grids") {
  const auto g1 = torus_grid(1, 4);
  REQUIRE(g1.size() == 4);
  CHECK(g1[0][0] == cplx(1.0, 0.0));
  CHECK(g1[1][0] == cplx(0.0, 1.0));
  CHECK(g1[2][0] == cplx(-1.0, 0.0));
  CHECK(g1[3][0] == cplx(0.0, -1.0));
  CHECK(torus_grid(2, 2).size() == 4);
  const auto s = torus_subsample(3, 10, 500, 7);
  CHECK(s.size() == 500);
  for (const auto& pt : s) {
    for (const cplx& c : pt) CHECK(std::abs(std::abs(c) - 1.0) <= 1e-15);
  }
  CHECK(torus_subsample(3, 10, 500, 7) == s);
  CHECK_THROWS_AS(torus_grid(4, 100, 1000), LabError);
  for (int n = 1; n <= 4; ++n) {
    for (int res : {8, 12, 24}) {
      CHECK(torus_orbit_count(n, res) == oracle::binomial(res + n - 1, n));
      CHECK(torus_orbit_indices(n, res).size() == torus_orbit_count(n, res));
    }
  }
}

TEST_CASE("power sums in symmetrized coordinates") {
  std::mt19937_64 rng(27);
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= 5; ++k) {
      const Polynomial p = power_sum(n, k);
      const std::vector<cplx> z = random_disc_points(static_cast<std::size_t>(n), rng, 0.0);
      cplx direct = 0.0;
      for (const cplx& c : z) direct += std::pow(c, k);
      const GammaPoint pt = symmetrize(z);
      CHECK(std::abs(p.eval(pt.coords) - direct) <= 1e-12);
    }
  }
}

TEST_CASE("matrix evaluation of polynomials agrees with scalar evaluation on diagonals") {
  Polynomial p = Polynomial::coordinate(2, 0) * Polynomial::coordinate(2, 1) + Polynomial::constant(2, cplx(0.0, 2.0));
  p.add_term({2, 0}, -1.5);
  const std::vector<cplx> a{cplx(0.3, 0.1), cplx(-0.2, 0.5)};
  const std::vector<cplx> b{cplx(0.7, 0.0), cplx(0.1, -0.4)};
  CMatrix x = CMatrix::Zero(2, 2);
  CMatrix y = CMatrix::Zero(2, 2);
  x(0, 0) = a[0];
  x(1, 1) = a[1];
  y(0, 0) = b[0];
  y(1, 1) = b[1];
  const std::vector<CMatrix> ops{x, y};
  const CMatrix v = p.eval(ops);
  for (int i = 0; i < 2; ++i) {
    const std::vector<cplx> pt{a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]};
    const cplx expect = pt[0] * pt[1] + cplx(0.0, 2.0) - 1.5 * pt[0] * pt[0];
    CHECK(std::abs(v(i, i) - expect) <= 1e-15);
  }
  CHECK(p.degree() == 2);
  CHECK(monomial_exponents(3, 2).size() == oracle::binomial(5, 2));
}
