#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "fppdt/fpp.hpp"
#include "fppdt/point_process.hpp"

namespace {

struct Instance {
  fppdt::DelaunayGraph graph;
  fppdt::EdgeWeights weights;
};

const Instance& instance(std::int64_t n) {
  static std::map<std::int64_t, Instance> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto g = fppdt::build_delaunay(fppdt::sample_poisson(fppdt::Window::square(std::sqrt(double(n))), 1.0, 5));
    auto w = fppdt::assign_weights(g, fppdt::WeightDistribution::exponential(1.0), 6);
    it = cache.emplace(n, Instance{std::move(g), std::move(w)}).first;
  }
  return it->second;
}

void BM_SingleSource(benchmark::State& state) {
  const Instance& in = instance(state.range(0));
  fppdt::ShortestPaths sp(in.graph, in.weights);
  for (auto _ : state) {
    sp.run(0);
    benchmark::DoNotOptimize(sp.settled_order().size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.graph.vertex_count()));
}
BENCHMARK(BM_SingleSource)->Arg(1 << 14)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_PointToPoint(benchmark::State& state) {
  const Instance& in = instance(1 << 16);
  const auto n = static_cast<fppdt::VertexId>(in.graph.vertex_count());
  for (auto _ : state) {
    benchmark::DoNotOptimize(fppdt::first_passage_time(in.graph, in.weights, 0, n / 2).time);
  }
}
BENCHMARK(BM_PointToPoint)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
