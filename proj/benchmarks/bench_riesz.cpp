#include <benchmark/benchmark.h>

#include "riesz/beta.hpp"
#include "riesz/distributions.hpp"
#include "riesz/pairkernel.hpp"
#include "riesz/riesz.hpp"

using namespace riesz;

static void BM_PairIntegralSphere(benchmark::State& state) {
  PairPlan plan;
  plan.n_pairs = static_cast<std::size_t>(state.range(0));
  const Shape s = sphere(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_integral(s, Stratum::kManifold, PairKernel{Complex(1.0, 0.0)}, plan));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PairIntegralSphere)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_FitProfileTorus(benchmark::State& state) {
  PairPlan plan;
  plan.n_pairs = static_cast<std::size_t>(state.range(0));
  const Shape t = torus(2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(fit_beta_profile(t, {}, plan));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitProfileTorus)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_BetaEvalBall(benchmark::State& state) {
  PairPlan plan;
  const Shape b = ball(3, 1.0);
  const auto prof = fit_beta_profile(b, {}, plan);
  for (auto _ : state) benchmark::DoNotOptimize(beta_eval(b, Complex(-2.5, 0.0), prof, -1.0, plan));
}
BENCHMARK(BM_BetaEvalBall)->Unit(benchmark::kMillisecond);

static void BM_MoebiusEllipse(benchmark::State& state) {
  const Shape e = ellipse(2.0, 1.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moebius_energy(e, n));
}
BENCHMARK(BM_MoebiusEllipse)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_InterpointCdfDisk(benchmark::State& state) {
  const Shape d = disk(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(interpoint_cdf(d, 1'000'000, 0));
}
BENCHMARK(BM_InterpointCdfDisk)->Unit(benchmark::kMillisecond);

static void BM_ChordsBall(benchmark::State& state) {
  const Shape b = ball(3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(chord_length_distribution(b, 1'000'000, 0));
}
BENCHMARK(BM_ChordsBall)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
