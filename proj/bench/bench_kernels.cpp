#include <benchmark/benchmark.h>

#include "gliders/entry_time.hpp"
#include "gliders/oracle.hpp"

using namespace gliders;

namespace {

void entry_times(benchmark::State& state, Kernel kernel) {
  const GlidersRule rule(-static_cast<int>(state.range(0)), 1);
  const int workers = static_cast<int>(state.range(1));
  const auto sampler = SamplerSpec::gliders_bernoulli(0.5, 0, 0.5, 1);
  const WindowSource source = [&](std::uint64_t trial, Index lo, std::span<State> out) {
    sampler.sample_into(lo, trial, out);
  };
  const Index trials = 500;
  for (auto _ : state) {
    auto t = sample_entry_times(source, rule, 1000, 4000, Side::minus, trials, {workers, kernel});
    benchmark::DoNotOptimize(t.data());
  }
  state.SetItemsProcessed(state.iterations() * trials);
}

void BM_SerialReference(benchmark::State& state) { entry_times(state, Kernel::serial_reference); }
void BM_ParallelScan(benchmark::State& state) { entry_times(state, Kernel::parallel_scan); }

void BM_MinimaOracle(benchmark::State& state) {
  const IncrementSpec inc = IncrementSpec::three_point(state.range(0) == 0 ? 0.5 : 0.25);
  const Index trials = 2000;
  for (auto _ : state) {
    auto e = simulate_minima_comparison({1, 3, 0}, 10000, trials, 1, inc, {static_cast<int>(state.range(1))});
    benchmark::DoNotOptimize(e.probability);
  }
  state.SetItemsProcessed(state.iterations() * trials);
}

}  // namespace

BENCHMARK(BM_SerialReference)->Args({1, 1})->Args({3, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelScan)->Args({1, 1})->Args({3, 1})->Args({1, 4})->Args({3, 4})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MinimaOracle)->Args({0, 1})->Args({1, 1})->Args({0, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
