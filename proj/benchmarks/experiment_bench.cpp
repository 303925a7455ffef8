#include <benchmark/benchmark.h>

#include "wavn/sim.hpp"

namespace {

void BM_DefaultExperiment(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    wavn::WorldConfig cfg;
    cfg.seed = seed++;
    benchmark::DoNotOptimize(wavn::run_experiment(cfg).chain.size());
  }
}
BENCHMARK(BM_DefaultExperiment)->Unit(benchmark::kMillisecond);

void BM_ScaledExperiment(benchmark::State& state) {
  wavn::WorldConfig cfg;
  cfg.n_robots = static_cast<std::size_t>(state.range(0));
  cfg.n_landmarks = 2 * cfg.n_robots;
  cfg.loops = 20;
  for (auto _ : state) benchmark::DoNotOptimize(wavn::run_experiment(cfg).chain.size());
}
BENCHMARK(BM_ScaledExperiment)->Arg(10)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
