#include <benchmark/benchmark.h>

#include "fppdt/paths.hpp"
#include "fppdt/point_process.hpp"
#include "fppdt/renorm.hpp"

namespace {

fppdt::SiteField poisson_field(int radius, std::uint64_t seed) {
  fppdt::Rng rng(seed);
  const auto dist = fppdt::SiteDistribution::poisson(1.0);
  std::vector<double> v(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)));
  for (double& x : v) x = dist.sample(rng);
  return fppdt::SiteField({-radius, -radius}, {radius, radius}, v);
}

void BM_GreedyAnimalExact(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const auto f = poisson_field(s - 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fppdt::greedy_animal(f, s, fppdt::AnimalMode::kExact).value);
}
BENCHMARK(BM_GreedyAnimalExact)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_OpenDensity(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  fppdt::Rng rng(2);
  std::vector<double> v(49);
  for (double& x : v) x = rng.uniform() < 0.7 ? 1.0 : 0.0;
  const fppdt::SiteField f({-3, -3}, {3, 3}, v);
  for (auto _ : state) benchmark::DoNotOptimize(fppdt::open_density(f, s, 2).value);
}
BENCHMARK(BM_OpenDensity)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_CountSelfAvoiding(benchmark::State& state) {
  const auto g = fppdt::build_delaunay(fppdt::sample_poisson(fppdt::Window::centered(40.0), 1.0, 3));
  const fppdt::VertexId v = fppdt::TileLocator(g.vertices()).nearest({0, 0});
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fppdt::count_self_avoiding(g, v, r).count);
}
BENCHMARK(BM_CountSelfAvoiding)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
