#include <benchmark/benchmark.h>

#include "avslice/baselines.hpp"
#include "avslice/config.hpp"
#include "avslice/solvers.hpp"

namespace {

using namespace avslice;

Scenario scenario_at_density(double density) {
  SimulationConfig c;
  c.road.av_density_per_m = density;
  return c.build_scenario();
}

void BM_AllocationLp(benchmark::State& state) {
  const double density = static_cast<double>(state.range(0)) / 100.0;
  const Scenario s = scenario_at_density(density);
  const auto p = s.nominal_ap_powers();
  const TrafficSpec qos;
  const Association x = max_sinr_association(s, p);
  const SlicingRatios b = solve_p1(s, x, p, 20e6).slicing;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_p2_allocation(s, b, x, p, qos));
  }
  state.SetLabel(std::to_string(s.vehicle_count()) + " vehicles");
}
BENCHMARK(BM_AllocationLp)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SlicingStep(benchmark::State& state) {
  const Scenario s = scenario_at_density(0.10);
  const auto p = s.nominal_ap_powers();
  const Association x = max_sinr_association(s, p);
  for (auto _ : state) benchmark::DoNotOptimize(solve_p1(s, x, p, 20e6));
}
BENCHMARK(BM_SlicingStep)->Unit(benchmark::kMicrosecond);

void BM_Acs(benchmark::State& state) {
  const double density = static_cast<double>(state.range(0)) / 100.0;
  const Scenario s = scenario_at_density(density);
  const AcsConfig cfg;
  int iterations = 0;
  for (auto _ : state) {
    const auto out = run_acs(s, TrafficSpec{}, 20e6, cfg);
    iterations = out.iterations;
    benchmark::DoNotOptimize(out);
  }
  state.counters["acs_iterations"] = iterations;
}
BENCHMARK(BM_Acs)->Arg(5)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_Baselines(benchmark::State& state) {
  const Scenario s = scenario_at_density(0.10);
  const AcsConfig cfg;
  const auto p = s.nominal_ap_powers();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_max_sinr(s, TrafficSpec{}, 20e6, p, cfg));
    benchmark::DoNotOptimize(run_max_utility(s, TrafficSpec{}, 20e6, p, cfg));
  }
}
BENCHMARK(BM_Baselines)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
