// Serial reference vs OpenMP sweep on a small thermal grid.

#include <benchmark/benchmark.h>

#include "harvest/builders.hpp"
#include "harvest/sweep.hpp"

namespace {

harvest::RunConfig grid() {
  harvest::RunConfig cfg;
  cfg.base = harvest::thermal(0.2, 2.5, 1.0, 0.1);
  cfg.axes.push_back({harvest::Param::L_M, 1.0, 3.0, 8, harvest::Spacing::Linear});
  return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = grid();
  for (auto _ : state) benchmark::DoNotOptimize(harvest::run_sweep_serial(cfg));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto cfg = grid();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(harvest::run_sweep(cfg, workers));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
