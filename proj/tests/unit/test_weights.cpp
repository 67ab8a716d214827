#include <cmath>

#include "doctest.h"
#include "fppdt/rng.hpp"
#include "fppdt/weights.hpp"
#include "helpers.hpp"

using namespace fppdt;

namespace {

const DelaunayGraph& big_graph() {
  static const DelaunayGraph g = build_delaunay(sample_poisson(Window::square(190.0), 1.0, 5));
  return g;
}

}  // namespace

TEST_CASE("distribution parsing") {
  CHECK(WeightDistribution::parse("exponential(1)") == WeightDistribution::exponential(1.0));
  CHECK(WeightDistribution::parse("bernoulliAtom(0.3,1)") == WeightDistribution::bernoulli_atom(0.3, 1.0));
  CHECK(WeightDistribution::parse("uniform:0,2") == WeightDistribution::uniform(0.0, 2.0));
  CHECK(WeightDistribution::parse("deterministic(2.5)").to_string() == WeightDistribution::deterministic(2.5).to_string());
  CHECK_THROWS_AS(WeightDistribution::parse("gamma(1)"), InvalidArgument);
  CHECK_THROWS_AS(WeightDistribution::exponential(-1.0), InvalidArgument);
  CHECK_THROWS_AS(WeightDistribution::bernoulli_atom(1.5, 1.0), InvalidArgument);
  CHECK(WeightDistribution::bernoulli_atom(0.3, 1.0).mass_at_zero() == doctest::Approx(0.3));
}

TEST_CASE("deterministic law gives constant weights") {
  const auto w = assign_weights(big_graph(), WeightDistribution::deterministic(2.5), 1);
  for (const double x : w.values()) CHECK(x == 2.5);
}

TEST_CASE("bernoulli atom zero fraction within 3 sigma") {
  const auto& g = big_graph();
  REQUIRE(g.edge_count() > 100000);
  const auto w = assign_weights(g, WeightDistribution::bernoulli_atom(0.3, 1.0), 7);
  std::size_t zeros = 0;
  for (const double x : w.values()) zeros += x == 0.0;
  const double m = static_cast<double>(w.size());
  CHECK(std::abs(static_cast<double>(zeros) / m - 0.3) < 3.0 * std::sqrt(0.21 / m));
}

TEST_CASE("exponential weights are dyadic with the right mean") {
  const auto& g = big_graph();
  const auto w = assign_weights(g, WeightDistribution::exponential(2.0), 3);
  double sum = 0.0;
  for (const double x : w.values()) {
    CHECK(x == dyadic(x));
    CHECK(x >= 0.0);
    sum += x;
  }
  const double m = static_cast<double>(w.size());
  CHECK(std::abs(sum / m - 0.5) < 4.0 * 0.5 / std::sqrt(m));
}

TEST_CASE("weights are deterministic per seed") {
  const auto& g = big_graph();
  const auto d = WeightDistribution::uniform(0.0, 2.0);
  CHECK(assign_weights(g, d, 11) == assign_weights(g, d, 11));
  CHECK(!(assign_weights(g, d, 11) == assign_weights(g, d, 12)));
}

TEST_CASE("keyed weights agree on shared vertices") {
  const PointSet a = testing_support::square_points(40, 10.0, 1);
  std::vector<Point> sub(a.points().begin(), a.points().begin() + 30);
  const PointSet b(sub, a.window());
  const auto ga = build_delaunay(a);
  const auto gb = build_delaunay(b);
  std::vector<std::int64_t> ida(40), idb(30);
  for (std::size_t i = 0; i < 40; ++i) ida[i] = static_cast<std::int64_t>(i);
  for (std::size_t i = 0; i < 30; ++i) idb[i] = static_cast<std::int64_t>(i);
  const auto d = WeightDistribution::exponential(1.0);
  const auto wa = assign_weights_keyed(ga, d, 9, ida);
  const auto wb = assign_weights_keyed(gb, d, 9, idb);
  std::size_t shared = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(gb.edge_count()); ++e) {
    const Edge ed = gb.edge(e);
    if (const auto f = ga.edge_index(ed.a, ed.b)) {
      CHECK(wa[*f] == wb[e]);
      ++shared;
    }
  }
  CHECK(shared > 0);
}

TEST_CASE("truncation") {
  CHECK(truncation_cap(100, 1.0) == doctest::Approx(8.0 * std::log(100.0)).epsilon(1e-9));
  const EdgeWeights w({0.1, 0.0, 100.0});
  const auto t = truncate_weights(w, 100, 1.0);
  CHECK(t[0] == 0.1);
  CHECK(t[1] == 0.0);
  CHECK(t[2] == truncation_cap(100, 1.0));
  CHECK_THROWS_AS(truncation_cap(1, 1.0), InvalidArgument);
}

TEST_CASE("threshold indicator") {
  const Tessellation tess(sample_poisson(Window::square(120.0), 1.0, 2));
  const auto& g = tess.graph();
  const auto& vd = tess.diagram();
  const std::vector<double> ones(g.edge_count(), 1.0), zeros(g.edge_count(), 0.0);
  CHECK(threshold_indicator(EdgeWeights(ones), vd, 0.5).open_count() == vd.dual_edge_count());
  CHECK(threshold_indicator(EdgeWeights(zeros), vd, 0.5).open_count() == 0);
  const auto w = assign_weights(g, WeightDistribution::bernoulli_atom(0.3, 1.0), 4);
  const auto b = threshold_indicator(w, vd, 0.5);
  const double m = static_cast<double>(b.size());
  CHECK(std::abs(static_cast<double>(b.open_count()) / m - 0.7) < 3.0 * std::sqrt(0.21 / m));
  for (std::int32_t d = 0; d < static_cast<std::int32_t>(b.size()); ++d) CHECK(b.open(d) == (w[vd.primal_edge(d)] >= 0.5));
}

TEST_CASE("check_weights rejects bad maps") {
  const auto& g = big_graph();
  CHECK_THROWS_AS(check_weights(g, EdgeWeights(std::vector<double>(3, 1.0))), InvalidArgument);
  CHECK_THROWS_AS(EdgeWeights({1.0, -1.0}), InvalidArgument);
}
