#include <benchmark/benchmark.h>

#include "raysplit/combinatorics.hpp"

namespace {

void BM_WordTable(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto table = raysplit::build_word_table(m);
    benchmark::DoNotOptimize(table.classes.data());
  }
}
BENCHMARK(BM_WordTable)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

void BM_SumRule(benchmark::State& state) {
  const auto table = raysplit::build_word_table(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(raysplit::verify_sum_rule(table).holds);
}
BENCHMARK(BM_SumRule)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

}  // namespace
