#include <benchmark/benchmark.h>

#include "raysplit/graph.hpp"
#include "raysplit/spectrum.hpp"

namespace {

void BM_FindRoots(benchmark::State& state) {
  const auto pot = raysplit::build_potential(0.7, 0.5);
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto result = raysplit::find_first_roots(pot, count);
    benchmark::DoNotOptimize(result.roots.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FindRoots)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_NStepRoots(benchmark::State& state) {
  const auto pot = raysplit::build_nstep({0.0, 0.3, 0.7, 1.0}, {0.0, 0.4, 0.6});
  for (auto _ : state) {
    auto result = raysplit::nstep_find_roots(pot, static_cast<double>(state.range(0)));
    benchmark::DoNotOptimize(result.roots.data());
  }
}
BENCHMARK(BM_NStepRoots)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_OrbitTraceSum(benchmark::State& state) {
  const auto pot = raysplit::build_potential(0.7, 0.5);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(raysplit::orbit_trace_sum(pot, 17.3, n));
}
BENCHMARK(BM_OrbitTraceSum)->DenseRange(4, 16, 4);

}  // namespace
