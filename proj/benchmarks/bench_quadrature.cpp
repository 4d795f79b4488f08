#include <benchmark/benchmark.h>

#include "opg/etendue.hpp"
#include "opg/quadrature.hpp"

using namespace opg;

namespace {

void BM_QuadratureOnAxis(benchmark::State& state) {
  const auto patch =
      FootprintPatch::rectangle(millimeters(1.0), millimeters(1.0), meters(1.0));
  const PupilDisc pupil{millimeters(10.0)};
  QuadratureSpec spec;
  spec.order = static_cast<int>(state.range(0));
  spec.target_rel_tol = 1e-6;

  for (auto _ : state) {
    auto result = quadrature_etendue(patch, pupil, spec);
    benchmark::DoNotOptimize(result.full);
  }
  // One accepted refinement means two grids of order and 2*order.
  const auto n = spec.order;
  state.counters["kernel_evals"] =
      benchmark::Counter(static_cast<double>(n) * n * n * n * 17.0,
                         benchmark::Counter::kIsIterationInvariantRate);
}

void BM_QuadratureTiltedOffAxis(benchmark::State& state) {
  const auto patch = FootprintPatch::rectangle(millimeters(1.0), millimeters(2.0),
                                               meters(0.5), radians(0.5235987755982988));
  PupilDisc pupil{millimeters(50.0)};
  pupil.offset_x = millimeters(5.0);
  pupil.offset_y = millimeters(-3.0);
  QuadratureSpec spec;
  spec.order = static_cast<int>(state.range(0));
  spec.target_rel_tol = 1e-7;

  for (auto _ : state) {
    auto result = quadrature_etendue(patch, pupil, spec);
    benchmark::DoNotOptimize(result.full);
  }
}

void BM_ClosedFormSensor(benchmark::State& state) {
  for (auto _ : state) {
    auto result = reduced_sensor_factor(micrometers(17.0), 1.0);
    benchmark::DoNotOptimize(result.full);
  }
}

}  // namespace

BENCHMARK(BM_QuadratureOnAxis)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_QuadratureTiltedOffAxis)->Arg(8)->Arg(16);
BENCHMARK(BM_ClosedFormSensor);

BENCHMARK_MAIN();
