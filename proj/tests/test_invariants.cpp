#include <doctest.h>

#include <random>

#include "gammalab/generators.hpp"
#include "gammalab/invariants.hpp"
#include "oracles.hpp"

using namespace gammalab;

namespace {

const Tolerances kTol;

}  // namespace

TEST_CASE("characteristic function examples") {
  const std::vector<cplx> grid = disc_grid(16, 0.7, true);
  const CharFnGrid zero = char_fn(CMatrix::Zero(3, 3), grid, kTol);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    CHECK((zero.values[j] - grid[j] * CMatrix::Identity(3, 3)).norm() <= 1e-15);
  }
  CMatrix half = CMatrix::Constant(1, 1, 0.5);
  const std::vector<cplx> at{0.5};
  CHECK(std::abs(char_fn(half, at, kTol).values[0](0, 0)) <= 1e-15);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx p(u(rng), u(rng));
    const cplx z(u(rng), u(rng));
    const CMatrix pm = CMatrix::Constant(1, 1, p);
    const std::vector<cplx> zs{z};
    const CharFnGrid c = char_fn(pm, zs, kTol);
    // Scalar defect bases are unimodular multiples of 1, so compare moduli and the phase-free product.
    CHECK(std::abs(std::abs(c.values[0](0, 0)) - std::abs(oracle::moebius(p, z))) <= 1e-14);
  }
}

TEST_CASE("characteristic function of a diagonal contraction is the diagonal of Moebius maps") {
  Eigen::VectorXcd d(3);
  d << cplx(0.2, 0.1), cplx(-0.5, 0.3), cplx(0.0, -0.7);
  const CMatrix p = d.asDiagonal();
  const std::vector<cplx> grid = disc_grid(8, 0.6, true);
  const CharFnGrid c = char_fn(p, CMatrix::Identity(3, 3), CMatrix::Identity(3, 3), grid, kTol);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (Index k = 0; k < 3; ++k) CHECK(std::abs(c.values[j](k, k) - oracle::moebius(d(k), grid[j])) <= 1e-14);
  }
}

TEST_CASE("characteristic function contractivity and value at the origin on the corpus") {
  const std::vector<cplx> grid = disc_grid(63, 0.95, true);
  for (const auto& m : corpus::standard()) {
    const CharFnGrid c = char_fn(m.g.P, grid, kTol, 16);
    CHECK(c.max_norm <= 1.0 + 1e-8);
    CHECK(c.origin_residual <= 1e-10);
    for (const CMatrix& dl : c.delta) CHECK((dl - dl.adjoint()).norm() <= 1e-12);
  }
}

TEST_CASE("coincidence is reflexive and symmetric") {
  const std::vector<cplx> grid = coincidence_grid();
  std::mt19937_64 rng(43);
  for (const auto& m : corpus::standard()) {
    if (m.seed % 5 != 0) continue;
    CAPTURE(m.seed);
    const CharData d = char_data(m.g, grid, kTol);
    const CoincidenceResult self = coincidence_solve(d.ct, d.ct, d.fadj, d.fadj, kTol);
    CHECK(self.certified);
    CHECK(self.residual <= 1e-12);
    const GammaTuple h = conjugate(m.g, random_unitary(m.dim, rng));
    const CharData e = char_data(h, grid, kTol);
    const CoincidenceResult ab = coincidence_solve(d.ct, e.ct, d.fadj, e.fadj, kTol);
    const CoincidenceResult ba = coincidence_solve(e.ct, d.ct, e.fadj, d.fadj, kTol);
    CHECK(ab.certified);
    CHECK(ba.certified);
    CHECK(ab.residual <= 1e-6);
    const double lo = std::max(std::min(ab.residual, ba.residual), 1e-15);
    CHECK(std::max(ab.residual, ba.residual) <= 10.0 * lo);
  }
}

TEST_CASE("coincidence recovers the restriction of the conjugating unitary") {
  const GammaTuple g = gen_symmetrized_ando(4, 3, 17);
  std::mt19937_64 rng(45);
  const CMatrix U = random_unitary(4, rng);
  const GammaTuple h = conjugate(g, U);
  const std::vector<cplx> grid = coincidence_grid();
  const CharData d = char_data(g, grid, kTol);
  const CharData e = char_data(h, grid, kTol);
  const CoincidenceResult r = coincidence_solve(d.ct, e.ct, d.fadj, e.fadj, kTol);
  REQUIRE(r.certified);
  const CMatrix u = e.ct.F.defect.basis.adjoint() * U * d.ct.F.defect.basis;
  const CMatrix us = e.fadj.defect.basis.adjoint() * U * d.fadj.defect.basis;
  // The intertwiner is unique up to a common phase.
  const cplx phase = (u.adjoint() * r.u).trace() / static_cast<double>(u.rows());
  CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-8);
  CHECK((r.u - phase * u).norm() <= 1e-8);
  CHECK((r.u_star - phase * us).norm() <= 1e-8);
}

TEST_CASE("falsifiers reject perturbed pairs and forced solving never certifies them") {
  const std::vector<cplx> grid = coincidence_grid();
  CoincidenceConfig forced;
  forced.force_procrustes = true;
  std::mt19937_64 rng(47);
  int tested = 0;
  for (const auto& m : corpus::standard()) {
    const CharData d = char_data(m.g, grid, kTol);
    if (d.ct.F.defect_dim() == 0) continue;
    CharData e = char_data(conjugate(m.g, random_unitary(m.dim, rng)), grid, kTol);
    e.ct.F.A[0] += 0.3 * CMatrix::Identity(e.ct.F.defect_dim(), e.ct.F.defect_dim());
    const CoincidenceResult r = coincidence_solve(d.ct, e.ct, d.fadj, e.fadj, kTol, forced);
    CHECK_FALSE(r.falsifier.empty());
    CHECK_FALSE(r.certified);
    ++tested;
  }
  CHECK(tested >= 40);
}

TEST_CASE("mismatched defect dimensions and grids") {
  const std::vector<cplx> grid = coincidence_grid();
  const GammaTuple a = gen_diagonal_normal(3, 3, 1, DiagonalMode::interior);
  const GammaTuple b = gen_diagonal_normal(3, 3, 2, DiagonalMode::unimodular);
  const CharData da = char_data(a, grid, kTol);
  const CharData db = char_data(b, grid, kTol);
  const CoincidenceResult r = coincidence_solve(da.ct, db.ct, da.fadj, db.fadj, kTol);
  CHECK_FALSE(r.certified);
  CHECK(r.falsifier == "defect dimension mismatch");
  const CharData dc = char_data(a, disc_grid(8, 0.5, true), kTol);
  CHECK_THROWS_AS(coincidence_solve(da.ct, dc.ct, da.fadj, dc.fadj, kTol), LabError);
}

TEST_CASE("equivalence decisions") {
  std::mt19937_64 rng(49);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto mode = seed % 2 == 0 ? DiagonalMode::interior : DiagonalMode::closed;
    const GammaTuple g = gen_diagonal_normal(2 + static_cast<Index>(seed), 3 + static_cast<int>(seed % 3), seed, mode);
    const GammaTuple h = conjugate(g, random_unitary(g.dim(), rng));
    const EquivalenceVerdict v = decide_equivalence(g, h, kTol);
    CHECK(v.equivalent());
    CHECK(v.s_residual <= 1e-6);
    CHECK(v.p_residual <= 1e-6);
    GammaTuple scaled = h;
    scaled.P *= 0.9;
    const EquivalenceVerdict w = decide_equivalence(g, scaled, kTol);
    CHECK_FALSE(w.equivalent());
    CHECK_FALSE(w.coincidence.falsifier.empty());
  }
}

TEST_CASE("scalar tuples are equivalent exactly when equal") {
  const GammaTuple a = scalar_tuple(symmetrize(std::vector<cplx>{0.2, cplx(0.0, 0.4), -0.3}));
  const GammaTuple b = scalar_tuple(symmetrize(std::vector<cplx>{0.2, cplx(0.0, 0.4), -0.35}));
  CHECK(decide_equivalence(a, a, kTol).equivalent());
  CHECK_FALSE(decide_equivalence(a, b, kTol).equivalent());
}

TEST_CASE("equivalence requires the commutation hypothesis") {
  const GammaTuple g = gen_symmetrized_ando(3, 3, 2);
  try {
    decide_equivalence(g, g, kTol);
    FAIL("expected HypothesisViolated");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolated);
  }
}
