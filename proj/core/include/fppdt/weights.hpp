#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fppdt/bonds.hpp"
#include "fppdt/delaunay.hpp"

namespace fppdt {

/// Edge passage-time law F.
class WeightDistribution {
 public:
  enum class Kind { kDeterministic, kBernoulliAtom, kExponential, kUniform };

  static WeightDistribution deterministic(double c);
  /// Mass p0 at 0, the rest at v.
  static WeightDistribution bernoulli_atom(double p0, double v);
  static WeightDistribution exponential(double rate);
  static WeightDistribution uniform(double a, double b);

  /// Parses "exponential(1)", "uniform(0,2)", "bernoulliAtom(0.3,1)",
  /// "deterministic(2.5)"; ':' may replace the parentheses.
  static WeightDistribution parse(std::string_view text);

  Kind kind() const { return kind_; }
  double first() const { return p1_; }
  double second() const { return p2_; }

  /// Inverse CDF. Continuous draws are rounded to the dyadic grid
  /// 2^-32 (see dyadic()).
  double quantile(double u) const;
  /// F(0), the mass at zero.
  double mass_at_zero() const;
  double mean() const;
  std::string to_string() const;

  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;

 private:
  WeightDistribution(Kind kind, double p1, double p2);
  Kind kind_;
  double p1_;
  double p2_;
};

/// Rounds w to the nearest multiple of 2^-32. Sums of such values below
/// 2^20 are exact in double precision, so passage times do not depend on
/// the order of summation and scaling every weight by a small integer
/// scales every passage time exactly.
double dyadic(double w);

/// Passage times aligned with the canonical edge order of one graph.
class EdgeWeights {
 public:
  EdgeWeights() = default;
  explicit EdgeWeights(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](EdgeId e) const { return values_[static_cast<std::size_t>(e)]; }
  std::span<const double> values() const { return values_; }

  /// Every weight multiplied by c > 0.
  EdgeWeights scaled(double c) const;

  friend bool operator==(const EdgeWeights&, const EdgeWeights&) = default;

 private:
  std::vector<double> values_;
};

/// i.i.d. draws from dist, one uniform per edge in canonical edge order.
EdgeWeights assign_weights(const DelaunayGraph& graph, const WeightDistribution& dist,
                           std::uint64_t seed);

/// Draws keyed by the endpoints' external identifiers rather than by edge
/// position: the weight of {u, v} depends only on (seed, ids[u], ids[v]).
/// Two graphs sharing identified vertices therefore agree on every shared
/// edge.
EdgeWeights assign_weights_keyed(const DelaunayGraph& graph, const WeightDistribution& dist,
                                 std::uint64_t seed, std::span<const std::int64_t> ids);

/// Truncation cap 8 a^-1 log n (rounded down to the dyadic grid).
double truncation_cap(std::int64_t n, double a);

/// min(tau, 8 a^-1 log n) edgewise.
EdgeWeights truncate_weights(const EdgeWeights& weights, std::int64_t n, double a);

/// Bond field on the dual edges: e* open iff tau_e >= eps.
BondConfiguration threshold_indicator(const EdgeWeights& weights, const VoronoiDiagram& diagram,
                                      double eps);

/// Throws InvalidArgument unless weights has one finite nonnegative entry
/// per edge of graph.
void check_weights(const DelaunayGraph& graph, const EdgeWeights& weights);

}  // namespace fppdt
