#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fppdt/fpp.hpp"
#include "fppdt/rng.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fppdt;

TEST_CASE("zero weights give zero times") {
  const auto g = build_delaunay(testing_support::square_points(60, 10.0, 1));
  const EdgeWeights w(std::vector<double>(g.edge_count(), 0.0));
  for (VertexId v = 0; v < 60; v += 7) CHECK(passage_time(g, w, 0, v) == 0.0);
}

TEST_CASE("cheap direct edge is the geodesic") {
  const auto g = build_delaunay(testing_support::square_points(30, 10.0, 2));
  std::vector<double> vals(g.edge_count(), 1.0);
  const Edge e = g.edge(5);
  vals[5] = 0.75;
  const auto r = first_passage_time(g, EdgeWeights(vals), e.a, e.b);
  CHECK(r.time == 0.75);
  CHECK(r.geodesic == std::vector<VertexId>{e.a, e.b});
}

TEST_CASE("passage times equal exhaustive path enumeration") {
  Rng rng(3);
  const WeightDistribution laws[] = {WeightDistribution::exponential(1.0), WeightDistribution::bernoulli_atom(0.4, 1.0),
                                     WeightDistribution::uniform(0.0, 2.0)};
  for (std::uint64_t s = 0; s < 60; ++s) {
    const std::size_t n = 4 + s % 7;
    const auto g = build_delaunay(testing_support::square_points(n, 10.0, 50 + s));
    const auto w = assign_weights(g, laws[s % 3], s);
    const auto sg = oracle::small_graph(g, w);
    const auto u = static_cast<VertexId>(rng.below(n));
    const auto v = static_cast<VertexId>(rng.below(n));
    std::vector<int> best;
    const double expect = oracle::min_path_time(sg, u, v, &best);
    const auto got = first_passage_time(g, w, u, v);
    CHECK(got.time == expect);
    CHECK(std::vector<int>(got.geodesic.begin(), got.geodesic.end()) == best);
    CHECK(path_time(g, w, got.geodesic) == got.time);
    const auto all = passage_times(g, w, u);
    for (VertexId x = 0; x < static_cast<VertexId>(n); ++x) CHECK(all[static_cast<std::size_t>(x)] == oracle::min_path_time(sg, u, x));
  }
}

TEST_CASE("settling order is nondecreasing") {
  const auto g = build_delaunay(testing_support::square_points(400, 20.0, 4));
  const auto w = assign_weights(g, WeightDistribution::exponential(1.0), 4);
  ShortestPaths sp(g, w);
  sp.run(0);
  const auto order = sp.settled_order();
  CHECK(order.size() == 400);
  for (std::size_t i = 1; i < order.size(); ++i) CHECK(sp.distance(order[i - 1]) <= sp.distance(order[i]));
  // a second run on the same scratch gives the same labels
  const auto first = passage_times(g, w, 17);
  sp.run(17);
  for (VertexId v = 0; v < 400; ++v) CHECK(sp.distance(v) == first[static_cast<std::size_t>(v)]);
}

TEST_CASE("point queries") {
  const Tessellation tess(sample_poisson(Window::square(30.0), 1.0, 6));
  const auto w = assign_weights(tess.graph(), WeightDistribution::exponential(1.0), 6);
  const auto& vd = tess.diagram();
  const Point x{10.0, 10.0}, y{20.0, 17.0};
  CHECK(point_passage_time(x, x + Point{1e-6, 0}, vd, w).time == 0.0);
  const VertexId vx = locate_tile(x, vd), vy = locate_tile(y, vd);
  const auto r = point_passage_time(x, y, vd, w);
  CHECK(r.time == passage_time(tess.graph(), w, vx, vy));
  CHECK(point_passage_time(tess.graph().point(vx), y, vd, w).time == r.time);
}

TEST_CASE("reached sets") {
  const auto g = build_delaunay(testing_support::square_points(80, 10.0, 7));
  const auto w = assign_weights(g, WeightDistribution::uniform(1.0, 2.0), 7);
  CHECK(reached_set(g, w, 3, 0.5).vertices == std::vector<VertexId>{3});
  double total = 0.0;
  for (const double x : w.values()) total += x;
  CHECK(reached_set(g, w, 3, total).vertices.size() == 80);
  const auto all = passage_times(g, w, 3);
  const double t = 2.5;
  std::vector<VertexId> expect;
  for (VertexId v = 0; v < 80; ++v)
    if (all[static_cast<std::size_t>(v)] <= t) expect.push_back(v);
  CHECK(reached_set(g, w, 3, t).vertices == expect);
  CHECK_THROWS_AS(reached_set(g, w, 3, -1.0), InvalidArgument);
}

TEST_CASE("geodesic ties") {
  const auto g = build_delaunay(testing_support::explicit_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  const EdgeWeights ones(std::vector<double>(g.edge_count(), 1.0));
  CHECK(has_geodesic_tie(g, ones, 1, 3));
  CHECK(!has_geodesic_tie(g, ones, 0, 1));
  const EdgeWeights zeros(std::vector<double>(g.edge_count(), 0.0));
  CHECK(has_geodesic_tie(g, zeros, 0, 1));
}

TEST_CASE("input validation") {
  const auto g = build_delaunay(testing_support::square_points(10, 10.0, 8));
  const EdgeWeights w(std::vector<double>(g.edge_count(), 1.0));
  CHECK_THROWS_AS(first_passage_time(g, w, 0, 10), InvalidArgument);
  CHECK_THROWS_AS(first_passage_time(g, EdgeWeights(std::vector<double>(2, 1.0)), 0, 1), InvalidArgument);
  std::vector<VertexId> bogus{0, 0};
  CHECK_THROWS_AS(path_time(g, w, bogus), InvalidArgument);
}
