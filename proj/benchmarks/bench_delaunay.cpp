#include <benchmark/benchmark.h>

#include <cmath>

#include "fppdt/delaunay.hpp"
#include "fppdt/point_process.hpp"
#include "fppdt/rng.hpp"
#include "fppdt/voronoi.hpp"

namespace {

void BM_Triangulate(benchmark::State& state) {
  const double side = std::sqrt(static_cast<double>(state.range(0)));
  const auto pts = fppdt::sample_poisson(fppdt::Window::square(side), 1.0, 1);
  for (auto _ : state) {
    auto g = fppdt::build_delaunay(pts);
    benchmark::DoNotOptimize(g.edge_count());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_Triangulate)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_Tessellate(benchmark::State& state) {
  const double side = std::sqrt(static_cast<double>(state.range(0)));
  const auto pts = fppdt::sample_poisson(fppdt::Window::square(side), 1.0, 2);
  for (auto _ : state) {
    fppdt::Tessellation t(pts, fppdt::VoronoiOptions{state.range(1) != 0});
    benchmark::DoNotOptimize(t.diagram().dual_edge_count());
  }
}
BENCHMARK(BM_Tessellate)->Args({1 << 16, 0})->Args({1 << 16, 1})->Unit(benchmark::kMillisecond);

void BM_Locate(benchmark::State& state) {
  const auto pts = fppdt::sample_poisson(fppdt::Window::square(256.0), 1.0, 3);
  const fppdt::TileLocator loc(pts);
  fppdt::Rng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(loc.nearest({rng.uniform(0, 256), rng.uniform(0, 256)}));
  }
}
BENCHMARK(BM_Locate);

void BM_Poisson(benchmark::State& state) {
  const double side = std::sqrt(static_cast<double>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(fppdt::sample_poisson(fppdt::Window::square(side), 1.0, ++seed).size());
}
BENCHMARK(BM_Poisson)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
