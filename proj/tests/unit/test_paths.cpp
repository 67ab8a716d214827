#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fppdt/paths.hpp"
#include "fppdt/rng.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fppdt;

namespace {

std::vector<Point> coords(const DelaunayGraph& g, const std::vector<int>& path) {
  std::vector<Point> out;
  for (const int v : path) out.push_back(g.point(v));
  return out;
}

// Every step of the walk crosses [from, to] through the shared Voronoi edge.
bool walk_verified(const SegmentWalk& w, const VoronoiDiagram& vd) {
  const auto& g = vd.delaunay();
  const auto& path = w.path.vertices;
  const auto pts = g.vertices().points();
  if (path.front() != oracle::nearest(pts, w.from) || path.back() != oracle::nearest(pts, w.to)) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto e = g.edge_index(path[i], path[i + 1]);
    if (!e) return false;
    const auto c = vd.dual_carrier(*e);
    if (!oracle::segments_meet(w.from, w.to, c[0], c[1])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("segment walk across one bisector") {
  const PointSet ps(std::vector<Point>{{0, 0}, {2, 0}, {1, 5}}, Window({-5, -5}, {6, 6}, 0.5));
  const Tessellation tess(ps);
  const auto w = segment_walk({0.2, 0.1}, {1.8, 0.1}, tess.diagram());
  CHECK(w.path.vertices == std::vector<VertexId>{0, 1});
  CHECK(!w.perturbed);
  // a query through the Voronoi vertex is moved off it
  const Point c = tess.diagram().vertex(0);
  const auto v = segment_walk({c.x - 1.0, c.y}, {c.x + 1.0, c.y}, tess.diagram());
  CHECK(v.perturbed);
  CHECK(walk_verified(v, tess.diagram()));
}

TEST_CASE("segment walks pass geometric verification") {
  const Tessellation tess(sample_poisson(Window::centered(40.0), 1.0, 5));
  const auto& vd = tess.diagram();
  Rng rng(6);
  std::size_t violations = 0;
  for (int q = 0; q < 2000; ++q) {
    const Point a{rng.uniform(-14, 14), rng.uniform(-14, 14)}, b{rng.uniform(-14, 14), rng.uniform(-14, 14)};
    const auto w = segment_walk(a, b, vd);
    CHECK(walk_verified(w, vd));
    violations += !w.path.self_avoiding;
  }
  CHECK(violations == 0);
  const auto same = segment_walk({0.0, 0.0}, {1e-9, 0.0}, vd);
  CHECK(same.path.vertices.size() == 1);
}

TEST_CASE("path animal trivia") {
  const PointSet ps(std::vector<Point>{{0.1, 0.2}, {0.3, -0.2}, {3.0, 0.0}}, Window({-5, -5}, {5, 5}, 0.0));
  const auto g = build_delaunay(ps);
  CHECK(path_animal(make_path(g, {0}), g, 1.0) == std::vector<Site>{{0, 0}});
  CHECK(path_animal(make_path(g, {0, 1}), g, 1.0) == std::vector<Site>{{0, 0}});
  const auto long_edge = path_animal(make_path(g, {1, 2}), g, 1.0);
  CHECK(long_edge == oracle::path_sites({ps[1], ps[2]}, 1.0));
  CHECK(long_edge.size() >= 4);
  CHECK_THROWS_AS(make_path(g, {0, 7}), InvalidArgument);
}

TEST_CASE("path animals match the rasterisation oracle") {
  const auto g = build_delaunay(sample_poisson(Window::centered(30.0), 1.0, 7));
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    // random walk of 10 edges
    std::vector<VertexId> path{static_cast<VertexId>(rng.below(g.vertex_count()))};
    for (int k = 0; k < 10; ++k) {
      const auto nb = g.neighbors(path.back());
      path.push_back(nb[rng.below(nb.size())]);
    }
    const double L = t % 2 ? 1.0 : 0.7;
    std::vector<int> ip(path.begin(), path.end());
    CHECK(path_animal(make_path(g, path), g, L) == oracle::path_sites(coords(g, ip), L));
  }
}

TEST_CASE("animal extrema trivia") {
  const PointSet ps = sample_poisson(Window::centered(6.0), 1.0, 3);
  const auto g = build_delaunay(ps);
  const auto one = path_animal_extrema(g, 0, 1, 1.0);
  std::size_t biggest = 0;
  for (const VertexId u : g.neighbors(0)) biggest = std::max(biggest, path_animal(make_path(g, {0, u}), g, 1.0).size());
  CHECK(one.G[1] == biggest);
  const auto huge = path_animal_extrema(g, 0, 4, 1000.0);
  for (int d = 0; d <= 4; ++d) {
    CHECK(huge.g[static_cast<std::size_t>(d)] == 1);
    CHECK(huge.G[static_cast<std::size_t>(d)] == 1);
  }
  CHECK_THROWS_AS(path_animal_extrema(g, 0, 10, 1.0), BoundExceeded);
}

TEST_CASE("animal extrema match path enumeration") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const PointSet ps = sample_uniform(Window::centered(8.0), 12, 40 + s);
    const auto g = build_delaunay(ps);
    const EdgeWeights w(std::vector<double>(g.edge_count(), 1.0));
    const auto sg = oracle::small_graph(g, w);
    const int r = 5;
    const auto ex = path_animal_extrema(g, 0, r, 1.0);
    std::size_t running = 0;
    for (int d = 0; d <= r; ++d) {
      std::size_t lo = SIZE_MAX, hi = 0;
      oracle::for_each_path(sg, 0, d, [&](const std::vector<int>& p) {
        const auto n = oracle::path_sites(coords(g, p), 1.0).size();
        lo = std::min(lo, n);
        hi = std::max(hi, n);
      });
      running = std::max(running, hi);
      if (lo == SIZE_MAX) continue;  // no path of d edges
      CHECK(ex.g[static_cast<std::size_t>(d)] == lo);
      CHECK(ex.G[static_cast<std::size_t>(d)] == running);
    }
  }
}

TEST_CASE("cheapest long path") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = build_delaunay(sample_uniform(Window::centered(8.0), 12, 80 + s));
    const auto w = assign_weights(g, WeightDistribution::bernoulli_atom(0.4, 1.0), s);
    const auto sg = oracle::small_graph(g, w);
    for (int r = 1; r <= 8; ++r) CHECK(cheapest_long_path(g, w, 0, r) == oracle::cheapest_exact_r(sg, 0, r));
    const EdgeWeights ones(std::vector<double>(g.edge_count(), 1.0)), zeros(std::vector<double>(g.edge_count(), 0.0));
    CHECK(cheapest_long_path(g, ones, 0, 6) == 6.0);
    CHECK(cheapest_long_path(g, zeros, 0, 6) == 0.0);
  }
  const auto tri = build_delaunay(testing_support::explicit_points({{0, 0}, {1, 0}, {0, 1}}));
  const EdgeWeights ones(std::vector<double>(3, 1.0));
  CHECK(cheapest_long_path(tri, ones, 0, 3) == kUnreached);
  CHECK_THROWS_AS(cheapest_long_path(tri, ones, 0, 10), BoundExceeded);
}

TEST_CASE("self-avoiding counts") {
  const auto tri = build_delaunay(testing_support::explicit_points({{0, 0}, {1, 0}, {0, 1}}));
  for (VertexId v = 0; v < 3; ++v) CHECK(count_self_avoiding(tri, v, 2).count == 2);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = build_delaunay(sample_uniform(Window::centered(8.0), 12, 120 + s));
    const EdgeWeights w(std::vector<double>(g.edge_count(), 1.0));
    const auto sg = oracle::small_graph(g, w);
    CHECK(count_self_avoiding(g, 3, 1).count == g.degree(3));
    for (int r = 2; r <= 6; ++r) {
      std::uint64_t walked = 0;
      oracle::for_each_path(sg, 3, r, [&](const std::vector<int>&) { ++walked; });
      const auto c = count_self_avoiding(g, 3, r);
      CHECK(c.count == oracle::count_paths(sg, 3, r));
      CHECK(c.count == walked);
      if (c.count > 0) CHECK(c.kappa == doctest::Approx(std::log(static_cast<double>(c.count))));
    }
  }
  CHECK_THROWS_AS(count_self_avoiding(tri, 0, 11), BoundExceeded);
}

TEST_CASE("path campaigns run and report") {
  CampaignSetup setup;
  setup.replicas = 4;
  setup.seed = 2;
  const auto walks = walk_length_scan({4.0, 8.0}, {1.0, 2.0}, setup);
  CHECK(walks.walks == 8);
  CHECK(walks.self_avoidance_violations == 0);
  for (const auto& row : walks.rows) CHECK(row.ratio.mean > 0.0);
  const auto mins = min_animal_scan({2, 3, 12}, 1.0, setup);
  CHECK(mins.rows[0].exact);
  CHECK(!mins.rows[2].exact);
  for (const auto& row : mins.rows)
    if (row.exact) CHECK(row.g_ratio.mean <= row.G_ratio.mean);
  const auto cheap = cheapest_path_scan(WeightDistribution::bernoulli_atom(0.4, 1.0), {2, 4}, 0.2, setup);
  CHECK(cheap.rows.size() == 2);
  for (const auto& t : cheap.times) CHECK(t[0] <= t[1]);
  const auto kap = kappa_scan(4, setup);
  CHECK(kap.rows.size() == 4);
  for (const auto& row : kap.counts) CHECK(row[1] >= row[0]);
}
