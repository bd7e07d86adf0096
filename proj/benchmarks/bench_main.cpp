#include <benchmark/benchmark.h>

#include <random>

#include "gammalab/abstractmodel.hpp"
#include "gammalab/dilation.hpp"
#include "gammalab/generators.hpp"
#include "gammalab/hardy.hpp"
#include "gammalab/invariants.hpp"

using namespace gammalab;

namespace {

const Tolerances kTol;

void BM_FundamentalTuple(benchmark::State& state) {
  const GammaTuple g = gen_symmetrized_ando(state.range(0), 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fo_tuple(g, kTol));
}
BENCHMARK(BM_FundamentalTuple)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_ContractionProbe(benchmark::State& state) {
  const GammaTuple g = gen_symmetrized_ando(state.range(0), 3, 2);
  ProbeConfig cfg;
  cfg.resolution = 16;
  const SupNormProbe probe(3, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(contraction_probe(g, &probe, kTol));
}
BENCHMARK(BM_ContractionProbe)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DilationCompression(benchmark::State& state) {
  const GammaTuple g = gen_symmetrized_ando(4, 3, 3);
  const FundamentalTuple f = fo_tuple(g, kTol);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const DilationTuple d = schaffer_dilate(g, f, depth, kTol);
    benchmark::DoNotOptimize(verify_dilation(d, 4, kTol));
  }
}
BENCHMARK(BM_DilationCompression)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ModelEmbedding(benchmark::State& state) {
  const GammaTuple g = gen_diagonal_normal(6, 3, 4, DiagonalMode::interior);
  const AsymptoticData ad = asymptotic_limits(g.P, kTol);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_embedding(g, ad, {depth, depth}, kTol));
}
BENCHMARK(BM_ModelEmbedding)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Coincidence(benchmark::State& state) {
  const GammaTuple g = gen_symmetrized_ando(state.range(0), 3, 5);
  std::mt19937_64 rng(5);
  const GammaTuple h = conjugate(g, random_unitary(g.dim(), rng));
  const std::vector<cplx> grid = coincidence_grid();
  const CharData a = char_data(g, grid, kTol);
  const CharData b = char_data(h, grid, kTol);
  for (auto _ : state) benchmark::DoNotOptimize(coincidence_solve(a.ct, b.ct, a.fadj, b.fadj, kTol));
}
BENCHMARK(BM_Coincidence)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BlhIntertwine(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const std::vector<CMatrix> A{0.4 * gaussian_matrix(2, 2, rng), 0.4 * gaussian_matrix(2, 2, rng)};
  const MatrixPolynomial theta{{CMatrix::Zero(2, 2), CMatrix::Identity(2, 2)}};
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(blh_intertwine(theta, A, depth, kTol));
}
BENCHMARK(BM_BlhIntertwine)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
