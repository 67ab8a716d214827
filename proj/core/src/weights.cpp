#include "fppdt/weights.hpp"

#include <charconv>
#include <cmath>

#include "fppdt/rng.hpp"

namespace fppdt {
namespace {

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("bad number '" + std::string(s) + "' in distribution");
  }
  return v;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

WeightDistribution::WeightDistribution(Kind kind, double p1, double p2)
    : kind_(kind), p1_(p1), p2_(p2) {}

WeightDistribution WeightDistribution::deterministic(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidArgument("deterministic weight must be finite and >= 0");
  return {Kind::kDeterministic, c, 0.0};
}

WeightDistribution WeightDistribution::bernoulli_atom(double p0, double v) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw InvalidArgument("bernoulliAtom p0 must lie in [0, 1]");
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("bernoulliAtom value must be finite and > 0");
  return {Kind::kBernoulliAtom, p0, v};
}

WeightDistribution WeightDistribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("exponential rate must be > 0");
  return {Kind::kExponential, rate, 0.0};
}

WeightDistribution WeightDistribution::uniform(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) throw InvalidArgument("uniform needs 0 <= a < b");
  return {Kind::kUniform, a, b};
}

WeightDistribution WeightDistribution::parse(std::string_view text) {
  std::string_view name = text;
  std::vector<double> args;
  const auto open = text.find_first_of("(:");
  if (open != std::string_view::npos) {
    name = text.substr(0, open);
    std::string_view rest = text.substr(open + 1);
    if (text[open] == '(') {
      if (rest.empty() || rest.back() != ')') throw InvalidArgument("unbalanced parentheses in distribution");
      rest.remove_suffix(1);
    }
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      args.push_back(parse_number(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  auto need = [&](std::size_t k) {
    if (args.size() != k) {
      throw InvalidArgument("distribution '" + std::string(name) + "' takes " + std::to_string(k) +
                            " parameter(s)");
    }
  };
  if (name == "deterministic") {
    need(1);
    return deterministic(args[0]);
  }
  if (name == "bernoulliAtom") {
    need(2);
    return bernoulli_atom(args[0], args[1]);
  }
  if (name == "exponential") {
    need(1);
    return exponential(args[0]);
  }
  if (name == "uniform") {
    need(2);
    return uniform(args[0], args[1]);
  }
  throw InvalidArgument("unknown distribution '" + std::string(name) + "'");
}

double dyadic(double w) { return std::ldexp(std::nearbyint(std::ldexp(w, 32)), -32); }

double WeightDistribution::quantile(double u) const {
  switch (kind_) {
    case Kind::kDeterministic:
      return p1_;
    case Kind::kBernoulliAtom:
      return u < p1_ ? 0.0 : p2_;
    case Kind::kExponential:
      return dyadic(-std::log1p(-u) / p1_);
    case Kind::kUniform:
      return dyadic(p1_ + (p2_ - p1_) * u);
  }
  return 0.0;
}

double WeightDistribution::mass_at_zero() const {
  switch (kind_) {
    case Kind::kDeterministic:
      return p1_ == 0.0 ? 1.0 : 0.0;
    case Kind::kBernoulliAtom:
      return p1_;
    case Kind::kExponential:
    case Kind::kUniform:
      return 0.0;
  }
  return 0.0;
}

double WeightDistribution::mean() const {
  switch (kind_) {
    case Kind::kDeterministic:
      return p1_;
    case Kind::kBernoulliAtom:
      return (1.0 - p1_) * p2_;
    case Kind::kExponential:
      return 1.0 / p1_;
    case Kind::kUniform:
      return 0.5 * (p1_ + p2_);
  }
  return 0.0;
}

std::string WeightDistribution::to_string() const {
  switch (kind_) {
    case Kind::kDeterministic:
      return "deterministic(" + format_number(p1_) + ")";
    case Kind::kBernoulliAtom:
      return "bernoulliAtom(" + format_number(p1_) + "," + format_number(p2_) + ")";
    case Kind::kExponential:
      return "exponential(" + format_number(p1_) + ")";
    case Kind::kUniform:
      return "uniform(" + format_number(p1_) + "," + format_number(p2_) + ")";
  }
  return {};
}

EdgeWeights::EdgeWeights(std::vector<double> values) : values_(std::move(values)) {
  for (const double w : values_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("edge weights must be finite and >= 0");
  }
}

EdgeWeights EdgeWeights::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("scale factor must be > 0");
  std::vector<double> out(values_);
  for (double& w : out) w *= c;
  return EdgeWeights(std::move(out));
}

EdgeWeights assign_weights(const DelaunayGraph& graph, const WeightDistribution& dist,
                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(graph.edge_count());
  for (double& x : w) x = dist.quantile(rng.uniform());
  return EdgeWeights(std::move(w));
}

EdgeWeights assign_weights_keyed(const DelaunayGraph& graph, const WeightDistribution& dist,
                                 std::uint64_t seed, std::span<const std::int64_t> ids) {
  if (ids.size() != graph.vertex_count()) throw InvalidArgument("one identifier per vertex required");
  std::vector<double> w(graph.edge_count());
  const auto edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto i = static_cast<std::uint64_t>(ids[static_cast<std::size_t>(edges[e].a)]);
    auto j = static_cast<std::uint64_t>(ids[static_cast<std::size_t>(edges[e].b)]);
    if (i > j) std::swap(i, j);
    const std::uint64_t key = mix64(mix64(seed ^ mix64(i)) ^ (j * 0x9e3779b97f4a7c15ULL));
    w[e] = dist.quantile(unit_uniform(key));
  }
  return EdgeWeights(std::move(w));
}

double truncation_cap(std::int64_t n, double a) {
  if (n < 2) throw InvalidArgument("truncation needs n >= 2");
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("truncation parameter a must be > 0");
  const double cap = 8.0 / a * std::log(static_cast<double>(n));
  return std::ldexp(std::floor(std::ldexp(cap, 32)), -32);
}

EdgeWeights truncate_weights(const EdgeWeights& weights, std::int64_t n, double a) {
  const double cap = truncation_cap(n, a);
  std::vector<double> out(weights.values().begin(), weights.values().end());
  for (double& w : out) w = std::min(w, cap);
  return EdgeWeights(std::move(out));
}

BondConfiguration threshold_indicator(const EdgeWeights& weights, const VoronoiDiagram& diagram,
                                      double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("threshold eps must be > 0");
  check_weights(diagram.delaunay(), weights);
  std::vector<char> open(diagram.dual_edge_count());
  for (std::size_t d = 0; d < open.size(); ++d) {
    open[d] = weights[diagram.primal_edge(static_cast<std::int32_t>(d))] >= eps ? 1 : 0;
  }
  return BondConfiguration(std::move(open));
}

void check_weights(const DelaunayGraph& graph, const EdgeWeights& weights) {
  if (weights.size() != graph.edge_count()) {
    throw InvalidArgument("weights have " + std::to_string(weights.size()) + " entries for " +
                          std::to_string(graph.edge_count()) + " edges");
  }
}

}  // namespace fppdt
