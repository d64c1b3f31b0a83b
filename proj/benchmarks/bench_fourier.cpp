#include <benchmark/benchmark.h>

#include "raysplit/analysis.hpp"
#include "raysplit/spectrum.hpp"

namespace {

void BM_FourierTransform(benchmark::State& state) {
  const auto pot = raysplit::build_potential(0.7, 0.5);
  const auto roots = raysplit::find_first_roots(pot, static_cast<std::size_t>(state.range(0))).roots;
  const auto grid = raysplit::uniform_grid(0.2, 2.0, raysplit::default_s_step(roots.back()));
  for (auto _ : state) {
    auto profile = raysplit::fourier_transform(roots, grid);
    benchmark::DoNotOptimize(profile.magnitude.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(roots.size() * grid.size()));
}
BENCHMARK(BM_FourierTransform)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
