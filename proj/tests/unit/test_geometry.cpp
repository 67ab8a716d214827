#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "fppdt/delaunay.hpp"
#include "fppdt/point_process.hpp"
#include "fppdt/predicates.hpp"
#include "fppdt/rng.hpp"
#include "fppdt/stats.hpp"
#include "fppdt/voronoi.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fppdt;
using testing_support::explicit_points;

TEST_CASE("window validation") {
  CHECK_THROWS_AS(Window({0, 0}, {0, 5}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(Window({0, 0}, {5, 5}, 2.5), InvalidArgument);
  CHECK_THROWS_AS(sample_poisson(Window::square(10), 0.0, 1), InvalidArgument);
  CHECK_THROWS_AS(PointSet({{1, 1}, {1, 1}}, Window::square(4)), InvalidArgument);
  CHECK_THROWS_AS(PointSet({{1, 1}, {5, 1}}, Window::square(4)), InvalidArgument);
}

TEST_CASE("poisson counts have mean intensity times area") {
  const Window w = Window::square(10.0);
  std::vector<double> counts;
  for (std::uint64_t s = 0; s < 10000; ++s) counts.push_back(static_cast<double>(sample_poisson(w, 1.0, s).size()));
  const Summary sum = summarize(counts);
  // 3 sigma of the mean of 10^4 Poisson(100) counts
  CHECK(std::abs(sum.mean - 100.0) < 3.0 * std::sqrt(100.0 / 10000.0));
  CHECK(std::abs(sum.variance - 100.0) < 6.0);
}

TEST_CASE("point samplers are deterministic and stay in the window") {
  const Window w = Window::centered(30.0);
  const PointSet a = sample_poisson(w, 2.0, 42);
  const PointSet b = sample_poisson(w, 2.0, 42);
  CHECK(a == b);
  CHECK(!(a == sample_poisson(w, 2.0, 43)));
  for (const Point p : a.points()) CHECK(w.contains(p));
  CHECK(sample_uniform(w, 77, 5).size() == 77);
}

TEST_CASE("hilbert order is a permutation") {
  const PointSet pts = testing_support::square_points(500, 20.0, 3);
  auto order = hilbert_order(pts.points(), pts.window().rect());
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) CHECK(order[i] == i);
}

TEST_CASE("truncated process caps and fills boxes") {
  const Window w = Window::square(40.0);
  const PointSet pts = sample_poisson(w, 1.0, 11);
  const auto tp = truncated_process_detailed(pts, 64, 0.1, 2);
  CHECK(tp.cap == static_cast<std::size_t>(std::ceil(4.0 * std::pow(64.0, 0.2))));
  CHECK(tp.origin.size() == tp.points.size());
  for (std::size_t i = 0; i < tp.points.size(); ++i) {
    if (tp.origin[i] >= 0) CHECK(tp.points[i] == pts[static_cast<std::size_t>(tp.origin[i])]);
  }
  // no box of side n^delta holds more than cap points
  const double side = tp.box_side;
  std::map<std::pair<long, long>, std::size_t> per_box;
  for (const Point p : tp.points.points()) {
    ++per_box[{std::lround(std::floor(p.x / side + 0.5)), std::lround(std::floor(p.y / side + 0.5))}];
  }
  for (const auto& [k, c] : per_box) CHECK(c <= tp.cap);
  CHECK_THROWS_AS(truncated_process(pts, 64, 0.2, 1), InvalidArgument);
}

TEST_CASE("minimal triangulation") {
  const auto g = build_delaunay(explicit_points({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(g.triangle_count() == 1);
  CHECK(g.edge_count() == 3);
  CHECK_THROWS_AS(build_delaunay(explicit_points({{0, 0}, {1, 1}, {2, 2}})), InvalidArgument);
  CHECK_THROWS_AS(build_delaunay(explicit_points({{0, 0}, {1, 1}})), InvalidArgument);
}

TEST_CASE("cocircular square keeps the diagonal of the earlier vertices") {
  const auto g = build_delaunay(explicit_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(g.triangle_count() == 2);
  CHECK(g.edge_count() == 5);
  CHECK(g.edge_index(0, 2).has_value());
  CHECK(!g.edge_index(1, 3).has_value());
  // either diagonal passes the empty-circle test
  CHECK(oracle::in_circle({0, 0}, {1, 0}, {1, 1}, {0, 1}) == 0);
}

TEST_CASE("random triangulations pass the brute-force audit") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const std::size_t n = 3 + s % 48;
    const Tessellation tess(testing_support::square_points(n, 10.0, 100 + s));
    const auto audit = oracle::audit_geometry(tess, 200, s);
    CHECK(audit.ok());
  }
}

TEST_CASE("lattice input with many cocircular quadruples") {
  std::vector<Point> pts;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) pts.push_back({static_cast<double>(i), static_cast<double>(j)});
  const PointSet ps(pts, Window({-1, -1}, {7, 7}, 0.5));
  const Tessellation tess(ps);
  CHECK(tess.graph().triangle_count() == 2 * 36);
  CHECK(oracle::audit_geometry(tess, 500, 9).ok());
  const auto g2 = build_delaunay(ps);
  CHECK(g2.structure_hash() == tess.graph().structure_hash());
}

TEST_CASE("single triangle dual") {
  const PointSet ps = explicit_points({{0, 0}, {4, 0}, {0, 4}});
  const Tessellation tess(ps);
  const auto& vd = tess.diagram();
  REQUIRE(vd.vertices().size() == 1);
  CHECK(vd.vertex(0).x == doctest::Approx(2.0));
  CHECK(vd.vertex(0).y == doctest::Approx(2.0));
  CHECK(vd.dual_edge_count() == 0);
  double area = 0.0;
  for (VertexId v = 0; v < 3; ++v) area += polygon_area(vd.cell(v));
  CHECK(area == doctest::Approx(ps.window().area()));
}

TEST_CASE("cells are the nearest-generator regions") {
  const Tessellation tess(testing_support::square_points(50, 10.0, 17));
  const auto& vd = tess.diagram();
  const auto pts = tess.points().points();
  Rng rng(4);
  double total = 0.0;
  for (std::size_t v = 0; v < pts.size(); ++v) {
    const Polygon& cell = vd.cell(static_cast<VertexId>(v));
    total += polygon_area(cell);
    for (int k = 0; k < 20; ++k) {
      // random convex combination of the cell corners
      std::vector<double> w(cell.size());
      double sw = 0.0;
      for (double& x : w) sw += (x = rng.uniform() + 0.05);
      Point x{0, 0};
      for (std::size_t i = 0; i < cell.size(); ++i) x = x + (w[i] / sw) * cell[i];
      for (std::size_t u = 0; u < pts.size(); ++u) {
        CHECK(squared_distance(x, pts[v]) <= squared_distance(x, pts[u]) + 1e-9);
      }
    }
  }
  CHECK(total == doctest::Approx(tess.points().window().area()).epsilon(1e-9));
}

TEST_CASE("locate_tile contracts") {
  const PointSet ps(std::vector<Point>{{0, 0}, {2, 0}, {1, 5}, {-3, -3}}, Window({-5, -5}, {6, 6}, 0.5));
  const Tessellation tess(ps);
  for (VertexId v = 0; v < 4; ++v) CHECK(locate_tile(ps[static_cast<std::size_t>(v)], tess.diagram()) == v);
  CHECK(locate_tile({1.0, 0.0}, tess.diagram()) == 0);
  CHECK_THROWS_AS(locate_tile({5.9, 0.0}, tess.diagram()), InvalidArgument);
}

TEST_CASE("predicates against the rational oracle") {
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    // coarse grid so that degenerate configurations are common
    auto pt = [&] { return Point{static_cast<double>(rng.below(5)) * 0.1, static_cast<double>(rng.below(5)) * 0.1}; };
    const Point a = pt(), b = pt(), c = pt(), d = pt();
    CHECK(predicates::orient2d(a, b, c) == oracle::orient(a, b, c));
    if (oracle::orient(a, b, c) > 0) CHECK(predicates::incircle(a, b, c, d) == oracle::in_circle(a, b, c, d));
    CHECK(predicates::segments_intersect(a, b, c, d) == oracle::segments_meet(a, b, c, d));
    const Rect r{{std::min(c.x, d.x), std::min(c.y, d.y)}, {std::max(c.x, d.x), std::max(c.y, d.y)}};
    CHECK(predicates::segment_meets_rect(a, b, r) == oracle::segment_meets_box(a, b, r));
  }
}
