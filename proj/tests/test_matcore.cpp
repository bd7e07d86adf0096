#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "gammalab/matcore.hpp"
#include "oracles.hpp"

using namespace gammalab;

namespace {

CMatrix random_psd(Index k, Index rank, std::mt19937_64& rng) {
  const CMatrix g = gaussian_matrix(k, rank, rng);
  return g * g.adjoint();
}

}  // namespace

TEST_CASE("tolerances validate their ordering") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.rank_tol = 1e-6;
  CHECK_THROWS_AS(t.validate(), LabError);
  Tolerances u;
  u.cert_tol = 0.0;
  CHECK_THROWS_AS(u.validate(), LabError);
}

TEST_CASE("operator norm agrees with power iteration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix m = gaussian_matrix(2 + trial % 5, 3 + trial % 4, rng);
    CHECK(op_norm(m) == doctest::Approx(oracle::op_norm(m)).epsilon(1e-9));
  }
}

TEST_CASE("psd_sqrt squares back and matches Denman-Beavers on definite input") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Index k = 2 + trial % 6;
    const CMatrix a = random_psd(k, k, rng) + 0.1 * CMatrix::Identity(k, k);
    const CMatrix r = psd_sqrt(a, Tolerances{});
    CHECK((r * r - a).norm() <= 1e-10 * a.norm());
    CHECK((r - oracle::sqrt_denman_beavers(a)).norm() <= 1e-9 * r.norm());
    CHECK((r - r.adjoint()).norm() <= 1e-14 * r.norm());
  }
  const CMatrix low = random_psd(6, 2, rng);
  const CMatrix r = psd_sqrt(low, Tolerances{});
  CHECK((r * r - low).norm() <= 1e-10 * low.norm());
}

TEST_CASE("psd_sqrt rejects non-Hermitian and indefinite input") {
  CMatrix m(2, 2);
  m << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(psd_sqrt(m, Tolerances{}), LabError);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -0.5;
  try {
    psd_sqrt(d, Tolerances{});
    FAIL("expected NotPSD");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
  }
}

TEST_CASE("range basis detects rank and is orthonormal") {
  std::mt19937_64 rng(7);
  for (Index rank = 0; rank <= 4; ++rank) {
    const CMatrix m = gaussian_matrix(6, rank, rng) * gaussian_matrix(rank, 5, rng);
    const Subspace s = range_basis(m, Tolerances{});
    CHECK(s.dim() == rank);
    CHECK((s.basis.adjoint() * s.basis - CMatrix::Identity(rank, rank)).norm() <= 1e-12);
    CHECK((s.projector() * m - m).norm() <= 1e-10 * (1.0 + m.norm()));
    const Subspace c = orthogonal_complement(s, Tolerances{});
    CHECK(c.dim() == 6 - rank);
    CHECK((c.basis.adjoint() * s.basis).norm() <= 1e-12);
  }
}

TEST_CASE("pinv satisfies the Penrose conditions") {
  std::mt19937_64 rng(9);
  const CMatrix m = gaussian_matrix(5, 2, rng) * gaussian_matrix(2, 4, rng);
  const CMatrix x = pinv(m, Tolerances{});
  CHECK((m * x * m - m).norm() <= 1e-10 * m.norm());
  CHECK((x * m * x - x).norm() <= 1e-10 * x.norm());
  CHECK(((m * x).adjoint() - m * x).norm() <= 1e-10);
  CHECK(((x * m).adjoint() - x * m).norm() <= 1e-10);
}

TEST_CASE("polar factor is unitary and reproduces the matrix") {
  std::mt19937_64 rng(11);
  const CMatrix m = gaussian_matrix(4, 4, rng);
  const CMatrix u = polar_unitary(m);
  CHECK(is_unitary(u, Tolerances{}).holds);
  const CMatrix h = u.adjoint() * m;
  CHECK((h - h.adjoint()).norm() <= 1e-12 * m.norm());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
}

TEST_CASE("random unitaries are unitary and seeded") {
  std::mt19937_64 a(13);
  std::mt19937_64 b(13);
  const CMatrix u = random_unitary(6, a);
  CHECK(is_unitary(u, Tolerances{}).holds);
  CHECK((u - random_unitary(6, b)).norm() == 0.0);
}

TEST_CASE("joint eigenvalues of a conjugated triangular commuting pair") {
  std::mt19937_64 rng(17);
  const Index k = 5;
  Eigen::VectorXcd d1(k), d2(k);
  for (Index i = 0; i < k; ++i) {
    d1(i) = cplx(0.1 * static_cast<double>(i), 0.2);
    d2(i) = d1(i) * d1(i) + cplx(0.0, 0.5);
  }
  const CMatrix u = random_unitary(k, rng);
  const CMatrix t1 = u * d1.asDiagonal() * u.adjoint();
  const CMatrix t2 = u * d2.asDiagonal() * u.adjoint();
  const std::vector<CMatrix> ops{t1, t2};
  const auto je = joint_eigenvalues(ops, Tolerances{}, 0);
  REQUIRE(je.size() == static_cast<std::size_t>(k));
  for (const auto& pt : je) {
    double best = 1e9;
    for (Index i = 0; i < k; ++i) best = std::min(best, std::abs(pt[0] - d1(i)) + std::abs(pt[1] - d2(i)));
    CHECK(best <= 1e-10);
  }
}

TEST_CASE("joint eigenvalues refuse non-commuting input") {
  CMatrix a = CMatrix::Zero(2, 2);
  CMatrix b = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  b(1, 0) = 1.0;
  const std::vector<CMatrix> ops{a, b};
  try {
    joint_eigenvalues(ops, Tolerances{}, 0);
    FAIL("expected NotCommuting");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::NotCommuting);
  }
}

TEST_CASE("isometry, unitary and normal predicates") {
  CMatrix shift = CMatrix::Zero(3, 2);
  shift(1, 0) = 1.0;
  shift(2, 1) = 1.0;
  CHECK(is_isometry(shift, Tolerances{}).holds);
  CMatrix j = CMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  CHECK_FALSE(is_normal(j, Tolerances{}).holds);
  CHECK_FALSE(is_unitary(j, Tolerances{}).holds);
  CHECK(is_normal(CMatrix::Identity(3, 3) * cplx(0.0, 2.0), Tolerances{}).holds);
}
