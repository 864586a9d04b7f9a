// Serial reference loops vs the OpenMP kernels on the three data-parallel
// workloads: grid scans, alpha sweeps and Monte Carlo replications.

#include <benchmark/benchmark.h>

#include "fuzzrel/decision.hpp"
#include "fuzzrel/optimizer.hpp"
#include "fuzzrel/simulation.hpp"

namespace {

using namespace fuzzrel;

FuzzySystemParams plant() {
  FuzzySystemParams fp;
  fp.lambda = FuzzyNumber::trapezoidal(0.5, 0.6, 0.7, 0.8);
  fp.theta = FuzzyNumber::trapezoidal(0.1, 0.2, 0.3, 0.4);
  fp.mu = FuzzyNumber::trapezoidal(3, 4, 5, 6);
  fp.beta = FuzzyNumber::trapezoidal(1, 2, 3, 4);
  fp.c = 0.9;
  return fp;
}

Execution policy(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial() : Execution::parallel();
}

void BM_GridScan(benchmark::State& state) {
  const FuzzySystemParams fp = plant();
  const Execution exec = policy(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_bounds(fp, Metric::mtbf(), 0.5, 41, exec));
  }
}
BENCHMARK(BM_GridScan)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_AvailabilityGrid(benchmark::State& state) {
  const FuzzySystemParams fp = plant();
  const Execution exec = policy(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_bounds(fp, Metric::availability(), 0.5, 15, exec));
  }
}
BENCHMARK(BM_AvailabilityGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_AlphaSweep(benchmark::State& state) {
  const FuzzySystemParams fp = plant();
  const std::vector<double> alphas = alpha_levels(11);
  const Execution exec = policy(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_table(fp, Metric::mtbf(), alphas, {}, exec));
  }
}
BENCHMARK(BM_AlphaSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_SimulateMttf(benchmark::State& state) {
  SimConfig cfg;
  cfg.params = {0.6, 0.2, 4.0, 0.9, 2.0};
  cfg.replications = 20000;
  const Execution exec = policy(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_mttf(cfg, exec));
  }
}
BENCHMARK(BM_SimulateMttf)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
