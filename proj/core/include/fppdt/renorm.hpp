#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fppdt/campaign.hpp"
#include "fppdt/percolation.hpp"
#include "fppdt/stats.hpp"

namespace fppdt {

/// True iff each of the 6 x 6 equal closed sub-boxes of box holds a point.
bool is_full_box(const Rect& box, std::span<const Point> points);
inline bool is_full_box(const Rect& box, const PointSet& points) { return is_full_box(box, points.points()); }

/// Fullness and point count of every box of a grid (closed boxes; a point
/// on a shared side counts for both neighbours).
struct BoxOccupancy {
  std::vector<char> full;
  std::vector<std::size_t> count;
};
BoxOccupancy box_occupancy(const BoxGrid& grid, std::span<const Point> points);

/// Values on the sites of an index rectangle; sites outside it carry 0 and
/// are not part of any animal.
class SiteField {
 public:
  SiteField(Site first, Site last, std::vector<double> values);
  static SiteField constant(Site first, Site last, double value);

  Site first() const { return first_; }
  Site last() const { return last_; }
  int columns() const { return last_.x - first_.x + 1; }
  int rows() const { return last_.y - first_.y + 1; }
  std::size_t size() const { return values_.size(); }
  bool contains(Site z) const {
    return z.x >= first_.x && z.x <= last_.x && z.y >= first_.y && z.y <= last_.y;
  }
  std::size_t index(Site z) const {
    return static_cast<std::size_t>(z.y - first_.y) * static_cast<std::size_t>(columns()) +
           static_cast<std::size_t>(z.x - first_.x);
  }
  Site site(std::size_t i) const {
    return {first_.x + static_cast<int>(i % static_cast<std::size_t>(columns())),
            first_.y + static_cast<int>(i / static_cast<std::size_t>(columns()))};
  }
  double operator[](Site z) const { return contains(z) ? values_[index(z)] : 0.0; }
  void set(Site z, double v) { values_.at(index(z)) = v; }
  std::span<const double> values() const { return values_; }

 private:
  Site first_;
  Site last_;
  std::vector<double> values_;
};

/// Connected set of sites containing the origin, sorted.
using Animal = std::vector<Site>;

enum class AnimalMode { kExact, kHeuristic };

inline constexpr int kMaxExactAnimal = 12;

struct AnimalResult {
  double value = 0.0;
  Animal witness;
  /// False for heuristic results, which are lower bounds only.
  bool exact = true;
};

/// M_s: the largest field sum over animals of at most s sites (within the
/// field's rectangle). Exact mode enumerates every animal (Redelmeier's
/// algorithm, each connected set through the origin generated once) with
/// branch-and-bound on the remaining capacity; s <= 12. Heuristic mode
/// grows greedily, then applies improving single-site swaps.
AnimalResult greedy_animal(const SiteField& field, int s, AnimalMode mode);

/// Visits every animal of exactly `size` sites containing the origin and
/// lying in the field rectangle. Stops early when visit returns false.
void for_each_animal(const SiteField& domain, int size, const std::function<bool(const Animal&)>& visit);

inline constexpr int kMaxDensityAnimal = 10;
inline constexpr int kMaxDensityGrid = 7;

/// Largest subset of the given sites with pairwise L-infinity distance >= k
/// (exact branch and bound; at most 25 sites).
std::size_t max_separated_subset(std::span<const Site> sites, int k);

/// m_s^k: minimum over animals with at least s sites of the largest
/// k-separated subset of open sites. Adding sites never lowers the inner
/// maximum, so the minimum is attained at exactly s sites. Bounds: s <= 10,
/// field rectangle at most 7 x 7.
struct DensityResult {
  std::size_t value = 0;
  Animal witness;
};
DensityResult open_density(const SiteField& open, int s, int k);

/// Lattice circuit of boxes B_z^{1/2, r}: consecutive sites are nearest
/// neighbours (including last to first) and no site repeats.
struct BoxCircuit {
  std::vector<Site> sites;
  double scale = 1.0;
};

/// Throws InvalidArgument when the sites do not form a circuit.
void validate_circuit(const BoxCircuit& circuit);

/// Both separation properties of a full-box circuit: no
/// Voronoi cell meets both Lambda^in and lambda^out, and none meets both
/// Lambda^out and lambda^in. Lambda^in/out are the bounded/unbounded parts
/// of the plane minus the boxes; lambda^in/out those of the polygon through
/// the scaled sites. Throws PreconditionError when a box of the circuit is
/// not full, InvalidArgument when the sites are not a circuit. Needs a
/// diagram built with cells.
bool circuit_separation_check(const BoxCircuit& circuit, const PointSet& points,
                              const VoronoiDiagram& diagram);

/// The geometric part of the check alone, without the fullness
/// precondition (sparse configurations can and do fail it).
bool separation_holds(const BoxCircuit& circuit, const VoronoiDiagram& diagram);

/// Sites of the boundary of the rectangle of sites [corner, corner + (width,
/// height)] in counter-clockwise order from the corner (2 (width + height)
/// sites). width, height >= 1.
std::vector<Site> rectangle_circuit(Site corner, int width, int height);

struct SeparationParams {
  double L = 20.0;      ///< box scale of the circuit
  int max_extent = 5;   ///< rectangle sides drawn from 1..max_extent
};

struct SeparationInstance {
  std::size_t replica = 0;
  Site corner;
  int width = 0;
  int height = 0;
  std::size_t points = 0;
  bool full = false;       ///< precondition held
  bool separated = false;  ///< verdict (only meaningful when full)
};

struct SeparationResult {
  SeparationParams params;
  std::vector<SeparationInstance> instances;
  std::size_t checked = 0;  ///< instances whose circuit boxes were all full
  std::size_t passed = 0;
};

/// One random rectangular circuit of boxes per replica on fresh Poisson
/// points (intensity from the setup); checks separation when every box of
/// the circuit is full.
SeparationResult separation_campaign(const SeparationParams& params, const CampaignSetup& setup);

/// Law of the i.i.d. site variables X_z.
class SiteDistribution {
 public:
  enum class Kind { kConstant, kPoisson, kBernoulli, kExponential };
  /// "constant(c)", "poisson(mean)", "bernoulli(p)", "exponential(rate)".
  static SiteDistribution parse(std::string_view text);
  static SiteDistribution constant(double c) { return {Kind::kConstant, c}; }
  static SiteDistribution poisson(double mean);
  double sample(Rng& rng) const;
  std::string to_string() const;

 private:
  SiteDistribution(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

struct AnimalGrowthRow {
  int s = 0;
  Summary ratio;  ///< M_s / s over replicas
  double q99 = 0.0;
};

struct AnimalGrowthResult {
  std::vector<AnimalGrowthRow> rows;
  std::vector<std::vector<double>> values;  ///< [replica][s index] M_s
  std::vector<int> s_grid;
  /// max M_s / s changes by less than 10% over the last two grid points.
  bool stabilizes = false;
};

/// One field per replica on [-s_max, s_max]^2 shared by every s.
AnimalGrowthResult animal_growth_scan(const SiteDistribution& dist, const std::vector<int>& s_grid,
                                      const CampaignSetup& setup);

struct GoodBoxProbeRow {
  double L = 0.0;
  Summary good_fraction;   ///< per-replica fraction of good sites
  Correlation separated;   ///< between sites at L-infinity distance `dependence`
};

struct GoodBoxProbeParams {
  GoodBoxVariant variant = GoodBoxVariant::kY;
  std::vector<double> L_grid;
  int grid = 6;          ///< sites per side
  int dependence = 3;    ///< distance at which independence is probed
  double p = 0.9;        ///< V: bond probability
  WeightDistribution weights = WeightDistribution::bernoulli_atom(0.1, 1.0);  ///< W
  double eps = 1.0;      ///< W threshold
};

struct GoodBoxProbeResult {
  GoodBoxProbeParams params;
  std::vector<GoodBoxProbeRow> rows;
  std::vector<std::vector<double>> fractions;  ///< [L index][replica]
};

GoodBoxProbeResult good_box_density_probe(const GoodBoxProbeParams& params, const CampaignSetup& setup);

}  // namespace fppdt
