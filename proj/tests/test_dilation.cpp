#include <doctest.h>

#include "gammalab/dilation.hpp"
#include "gammalab/generators.hpp"
#include "oracles.hpp"

using namespace gammalab;

namespace {

const Tolerances kTol;

GammaTuple scalar_from_roots(const std::vector<cplx>& z) { return scalar_tuple(symmetrize(z)); }

}  // namespace

TEST_CASE("zero defect dilation is the tuple itself") {
  const GammaTuple g = gen_diagonal_normal(3, 4, 8, DiagonalMode::unimodular);
  const FundamentalTuple f = fo_tuple(g, kTol);
  const DilationTuple d = schaffer_dilate(g, f, 4, kTol);
  REQUIRE(d.total_dim() == 3);
  CHECK((d.V - g.P).norm() == 0.0);
  for (int i = 1; i < g.n; ++i) CHECK((d.R[static_cast<std::size_t>(i - 1)] - g.s(i)).norm() == 0.0);
  const RepresentationSplit rs = representation_split(d, kTol);
  CHECK(rs.residual <= 1e-12);
}

TEST_CASE("scalar dilation has the hand-computed isometry defect") {
  const GammaTuple g = scalar_from_roots({cplx(0.3, 0.4), cplx(-0.5, 0.1), cplx(0.2, -0.6)});
  const FundamentalTuple f = fo_tuple(g, kTol);
  const int depth = 8;
  const DilationTuple d = schaffer_dilate(g, f, depth, kTol);
  REQUIRE(d.total_dim() == depth + 1);
  const cplx p = g.P(0, 0);
  CHECK(d.V(0, 0) == p);
  CHECK(std::abs(std::abs(d.V(1, 0)) - std::sqrt(1.0 - std::norm(p))) <= 1e-15);
  CMatrix expect = CMatrix::Zero(depth + 1, depth + 1);
  expect(depth, depth) = -1.0;
  CHECK((d.V.adjoint() * d.V - CMatrix::Identity(depth + 1, depth + 1) - expect).norm() <= 1e-14);

  const RepresentationSplit rs = representation_split(d, kTol);
  for (int i = 1; i < g.n; ++i) {
    const cplx ci = rs.C[static_cast<std::size_t>(i - 1)](0, 0);
    const cplx cni = rs.C[static_cast<std::size_t>(g.n - i - 1)](0, 0);
    CHECK(std::abs(g.s(i)(0, 0) - (ci + p * std::conj(cni))) <= 1e-8);
  }
  const WExtraction w = extract_W(d, f, kTol);
  for (int i = 1; i < g.n; ++i) {
    CHECK(std::abs(w.A_recovered[static_cast<std::size_t>(i - 1)](0, 0) - f.a(i)(0, 0)) <= 1e-14);
  }
}

TEST_CASE("ando dilation interior residuals") {
  const GammaTuple g = gen_symmetrized_ando(4, 3, 5);
  const FundamentalTuple f = fo_tuple(g, kTol);
  const DilationTuple d = schaffer_dilate(g, f, 12, kTol);
  CHECK(d.interior_commutator_residual <= 1e-8);
  CHECK(d.interior_isometry_residual <= 1e-8);
  CHECK(d.interior_algebra_residual <= 1e-8);
}

TEST_CASE("compression, representation and recovery on a corpus sample") {
  for (const auto& m : corpus::standard()) {
    if (m.seed % 5 != 0) continue;
    CAPTURE(m.seed);
    const FundamentalTuple f = fo_tuple(m.g, kTol);
    const DilationTuple d = schaffer_dilate(m.g, f, 12, kTol);
    const CompressionReport c = verify_dilation(d, 5, kTol);
    CHECK(c.passed);
    CHECK(c.max_residual <= 1e-6);
    CHECK(c.algebra_residual <= 1e-8);
    CHECK(representation_split(d, kTol).residual <= 1e-6);
    CHECK(extract_W(d, f, kTol).recovery_residual <= 1e-8);
  }
}

TEST_CASE("compression at depth and at twice the depth") {
  for (const auto& m : corpus::standard()) {
    if (m.seed % 7 != 0) continue;
    const FundamentalTuple f = fo_tuple(m.g, kTol);
    const double r1 = verify_dilation(schaffer_dilate(m.g, f, 6, kTol), 3, kTol).max_residual;
    const double r2 = verify_dilation(schaffer_dilate(m.g, f, 12, kTol), 3, kTol).max_residual;
    // Both are rounding-level; the deeper section may differ by rounding only.
    CHECK(r2 <= std::max(r1, 1e-12));
  }
}

TEST_CASE("trivial monomials compress exactly") {
  const GammaTuple g = gen_symmetrized_ando(3, 3, 6);
  const FundamentalTuple f = fo_tuple(g, kTol);
  const DilationTuple d = schaffer_dilate(g, f, 6, kTol);
  const CMatrix e = d.embed.basis;
  CHECK((e.adjoint() * d.V * e - g.P).norm() == 0.0);
  CHECK((e.adjoint() * e - CMatrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("dilation errors") {
  const GammaTuple g = gen_symmetrized_ando(3, 3, 6);
  const FundamentalTuple f = fo_tuple(g, kTol);
  try {
    schaffer_dilate(g, f, 1, kTol);
    FAIL("expected TruncationTooShallow");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::TruncationTooShallow);
  }
  const DilationTuple d = schaffer_dilate(g, f, 6, kTol);
  CHECK_THROWS_AS(verify_dilation(d, 4, kTol), LabError);
}

TEST_CASE("necessary condition through pure isometries") {
  for (const auto& m : corpus::standard()) {
    if (m.seed % 6 != 0) continue;
    const FundamentalTuple fa = fo_tuple(m.g.adjoint(), kTol);
    CHECK(necessary1_check(fa, {}, kTol).passed);
  }
  FundamentalTuple zero;
  zero.A = {CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
  CHECK(necessary1_check(zero, {}, kTol).passed);
  const GammaTuple g = gen_symmetrized_ando(3, 3, 12);
  FundamentalTuple fa = fo_tuple(g.adjoint(), kTol);
  REQUIRE(fa.A[0].norm() > 0.0);
  fa.A[0] *= 30.0;
  CHECK_FALSE(necessary1_check(fa, {}, kTol).passed);
}

TEST_CASE("minimality is reported") {
  const GammaTuple g = gen_symmetrized_ando(4, 3, 2);
  const FundamentalTuple f = fo_tuple(g, kTol);
  const MinimalityReport r = minimality_report(schaffer_dilate(g, f, 8, kTol), kTol);
  CHECK(r.krylov_rank <= r.space_dim);
  CHECK(r.krylov_rank >= 4);
}
