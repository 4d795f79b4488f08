#include <benchmark/benchmark.h>

#include "opg/photon_mc.hpp"
#include "opg/rng.hpp"

using namespace opg;

namespace {

void BM_ThermalDraw(benchmark::State& state) {
  const auto distribution =
      ModeDistribution::thermal(static_cast<double>(state.range(0)) / 100.0);
  Xoshiro256pp rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_mode_occupation(distribution, rng));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_PoissonDraw(benchmark::State& state) {
  const auto distribution =
      ModeDistribution::coherent(static_cast<double>(state.range(0)));
  Xoshiro256pp rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_mode_occupation(distribution, rng));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_SimulatePixel(benchmark::State& state) {
  SamplingSpec spec;
  spec.distribution = ModeDistribution::thermal(0.01);
  spec.n_modes = 3;
  spec.trials = state.range(0);
  spec.seed = 11;
  for (auto _ : state) {
    auto summary = simulate_pixel(spec);
    benchmark::DoNotOptimize(summary.empirical_mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulatePixelWorkers(benchmark::State& state) {
  SamplingSpec spec;
  spec.distribution = ModeDistribution::thermal(0.1);
  spec.n_modes = 3;
  spec.trials = 1'000'000;
  spec.seed = 11;
  for (auto _ : state) {
    auto summary = simulate_pixel(spec, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(summary.empirical_mean);
  }
  state.SetItemsProcessed(state.iterations() * spec.trials);
}

}  // namespace

BENCHMARK(BM_ThermalDraw)->Arg(1)->Arg(100);        // n_bar = 0.01, 1.0
BENCHMARK(BM_PoissonDraw)->Arg(5)->Arg(100)->Arg(5000);
BENCHMARK(BM_SimulatePixel)->Range(10'000, 1'000'000);
BENCHMARK(BM_SimulatePixelWorkers)->Arg(1)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
