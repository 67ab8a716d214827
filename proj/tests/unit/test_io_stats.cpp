#include <cmath>
#include <sstream>
#include <unordered_set>

#include "doctest.h"
#include "fppdt/io.hpp"
#include "fppdt/rng.hpp"
#include "fppdt/stats.hpp"
#include "helpers.hpp"

using namespace fppdt;

TEST_CASE("double formatting round-trips") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(rng.uniform() - 0.5, static_cast<int>(rng.below(80)) - 40);
    CHECK(parse_double(format_double(x)) == x);
    CHECK(parse_double(format_double17(x)) == x);
  }
  CHECK_THROWS_AS(parse_double("1.5x"), InvalidArgument);
  CHECK_THROWS_AS(parse_double(""), InvalidArgument);
}

TEST_CASE("points, graph and weights round-trip") {
  const PointSet pts = sample_poisson(Window::centered(20.0), 1.0, 3);
  std::stringstream ps;
  write_points(ps, pts);
  const PointSet back = read_points(ps);
  CHECK(back == pts);

  const auto g = build_delaunay(pts);
  std::stringstream gs;
  write_graph(gs, g);
  const EdgeList el = read_graph(gs);
  CHECK(el.vertices == g.vertex_count());
  CHECK(el.edges == testing_support::edge_list(g));

  const auto w = assign_weights(g, WeightDistribution::exponential(1.0), 4);
  std::stringstream ws;
  write_weights(ws, g, w);
  CHECK(read_weights(ws, g) == w);

  std::stringstream bad("# window 0 0 1 1 0.1\n0.5\n");
  CHECK_THROWS_AS(read_points(bad), InvalidArgument);
}

TEST_CASE("site fields round-trip") {
  SiteField f = SiteField::constant({-2, -1}, {3, 2}, 0.0);
  f.set({1, 1}, 2.5);
  f.set({-2, -1}, 1.0);
  f.set({3, 2}, 4.0);
  std::stringstream s;
  write_field(s, f);
  const SiteField g = read_field(s);
  for (int x = -2; x <= 3; ++x)
    for (int y = -1; y <= 2; ++y) CHECK(g[{x, y}] == f[{x, y}]);
}

TEST_CASE("summaries") {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  const Summary s = summarize(xs);
  CHECK(s.mean == 3.0);
  CHECK(s.variance == doctest::Approx(2.5));
  CHECK(s.half_width() == doctest::Approx(kZ95 * std::sqrt(2.5 / 5)));
  CHECK(s.min == 1.0);
  CHECK(s.max == 5.0);
  // Wilson interval for 5 / 20
  const Summary p = summarize_proportion(5, 20);
  CHECK(p.ci_low == doctest::Approx(0.1119).epsilon(1e-3));
  CHECK(p.ci_high == doctest::Approx(0.4687).epsilon(1e-3));
  CHECK(summarize_proportion(0, 10).ci_low == 0.0);
  CHECK(summarize_proportion(10, 10).ci_high == 1.0);
}

TEST_CASE("line fit and quantiles") {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.slope_se == doctest::Approx(0.0));
  const std::vector<double> q{4, 1, 3, 2};
  CHECK(quantile(q, 0.5) == doctest::Approx(2.5));
  CHECK(quantile(q, 0.0) == 1.0);
  CHECK(quantile(q, 1.0) == 4.0);
  std::vector<double> big;
  for (int i = 0; i < 1001; ++i) big.push_back(i);
  const auto qi = quantile_interval(big, 0.5);
  CHECK(qi.value == 500.0);
  CHECK(qi.low < 500.0);
  CHECK(qi.high > 500.0);
  CHECK(qi.high - qi.low < 80.0);
}

TEST_CASE("correlation") {
  Rng rng(3);
  std::vector<double> a, b, c;
  for (int i = 0; i < 2000; ++i) {
    a.push_back(rng.uniform());
    b.push_back(rng.uniform());
    c.push_back(2 * a.back() + 0.01 * rng.uniform());
  }
  const auto ind = correlate(a, b);
  CHECK(ind.ci_low < 0.0);
  CHECK(ind.ci_high > 0.0);
  CHECK(correlate(a, c).r > 0.99);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(7, 3, "points") == derive_seed(7, 3, "points"));
  CHECK(derive_seed(7, 3, "points") != derive_seed(7, 3, "weights"));
  CHECK(derive_seed(7, 0, "points") != derive_seed(7, 1, "points"));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2000000);
  for (std::uint64_t i = 0; i < 1000000; ++i) seen.insert(derive_seed(42, i, "points"));
  CHECK(seen.size() == 1000000);
  Rng a(derive_seed(1, 0, "points")), b(derive_seed(1, 0, "weights"));
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a.bits() == b.bits();
  CHECK(same == 0);
}

TEST_CASE("rng variates") {
  Rng rng(11);
  double s = 0.0, e = 0.0;
  std::uint64_t p = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    s += rng.uniform();
    e += rng.exponential(2.0);
    p += rng.poisson(30.0);
    CHECK(rng.below(7) < 7);
  }
  CHECK(std::abs(s / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(e / n - 0.5) < 4 * 0.5 / std::sqrt(n));
  CHECK(std::abs(static_cast<double>(p) / n - 30.0) < 4 * std::sqrt(30.0 / n));
}
