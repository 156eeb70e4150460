// Serial reference vs OpenMP kernels. With a single core the parallel
// variants mostly measure their overhead.

#include <benchmark/benchmark.h>

#include "drg/scenario.hpp"
#include "oracles.hpp"

using namespace drg;

namespace {

constexpr std::uint64_t kSamples = 1 << 20;

void BM_LensSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::lens_area_mc(1.0, 1.0, kSamples, 7));
  state.SetItemsProcessed(state.iterations() * kSamples);
}

void BM_LensParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::lens_area_mc_parallel(1.0, 1.0, kSamples, 7, threads));
  }
  state.SetItemsProcessed(state.iterations() * kSamples);
}

const Point kSenders[] = {{1, 0}, {-0.5, 0.8}, {-0.5, -0.8}};

void BM_UnionSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::union_coverage_fraction({0, 0}, kSenders, 1.0, kSamples, 3));
  }
  state.SetItemsProcessed(state.iterations() * kSamples);
}

void BM_UnionParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::union_coverage_fraction_parallel({0, 0}, kSenders, 1.0, kSamples, 3, threads));
  }
  state.SetItemsProcessed(state.iterations() * kSamples);
}

ScenarioConfig sweep_config() {
  ScenarioConfig cfg;
  cfg.highway.mobility.length = 2000;
  cfg.densities = {10, 20};
  cfg.protocols = {ProtocolKind::kDrg, ProtocolKind::kFlood};
  cfg.replicas = 4;
  cfg.drg.ttl = 5;
  return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
  const ScenarioConfig cfg = sweep_config();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(cfg));
}

void BM_SweepParallel(benchmark::State& state) {
  const ScenarioConfig cfg = sweep_config();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(cfg, jobs));
}

}  // namespace

BENCHMARK(BM_LensSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LensParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnionSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnionParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
