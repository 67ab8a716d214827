#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fppdt/bonds.hpp"
#include "fppdt/campaign.hpp"
#include "fppdt/stats.hpp"
#include "fppdt/weights.hpp"

namespace fppdt {

/// Crossing of a rectangle between two opposite sides.
struct CrossingSpec {
  Rect rect;
  /// false: from the left side to the right side; true: bottom to top.
  bool vertical = false;

  /// [0, 3R] x [0, R] shifted by anchor, crossed left to right.
  static CrossingSpec standard(double R, Point anchor = {0.0, 0.0});

  std::array<Point, 2> source_side() const;
  std::array<Point, 2> target_side() const;
};

/// Straight-line graph on which crossings are decided: Voronoi vertices and
/// bounded dual edges, or generators and Delaunay edges.
struct SegmentGraph {
  std::vector<Point> nodes;
  std::vector<std::array<std::int32_t, 2>> links;
};

SegmentGraph voronoi_graph(const VoronoiDiagram& diagram);
SegmentGraph delaunay_graph(const DelaunayGraph& graph);

/// Decides crossing events on one graph and one rectangle for many bond
/// fields. A crossing is a self-avoiding open path whose first link meets
/// the source side, whose last link meets the target side, and whose
/// interior nodes lie in the closed rectangle. End nodes are unconstrained.
class CrossingSolver {
 public:
  CrossingSolver(const SegmentGraph& graph, const CrossingSpec& spec);

  /// open[i] is the state of link i.
  bool crosses(std::span<const char> open) const;
  /// Smallest p at which the coupled field {u_i < p} crosses: the minimum
  /// over crossings of the largest u on the path (2 when no crossing
  /// exists even with every link open).
  double threshold(std::span<const double> u) const;

 private:
  struct Arc {
    std::int32_t link;
    std::int32_t to;
  };
  std::size_t node_count_ = 0;
  std::vector<char> inside_;
  std::vector<char> hits_source_;
  std::vector<char> hits_target_;
  std::vector<std::int32_t> start_links_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::vector<std::array<std::int32_t, 2>> links_;
};

/// One uniform per bounded dual edge, in dual index order.
std::vector<double> bond_uniforms(std::size_t count, std::uint64_t seed);

/// Open iff u < p.
BondConfiguration bonds_from_uniforms(std::span<const double> u, double p);

/// i.i.d. Bernoulli(p) marks on the dual edges, coupled across p through
/// bond_uniforms(seed).
BondConfiguration open_bonds(const VoronoiDiagram& diagram, double p, std::uint64_t seed);

bool crossing_event(const BondConfiguration& config, const CrossingSpec& spec,
                    const VoronoiDiagram& diagram);

/// Windows for crossing campaigns: points on [0, 3R + 2m] x [0, R + 2m]
/// with margin m = R / 2; the crossing rectangle is anchored at (m, m).
Window crossing_window(double R);
CrossingSpec crossing_spec(double R);

/// Which straight-line graph carries the bonds.
enum class BondLattice { kVoronoi, kDelaunay };

struct EtaPoint {
  double p = 0.0;
  Summary eta;  ///< crossing frequency with a Wilson interval
};

struct EtaCurve {
  double R = 0.0;
  BondLattice lattice = BondLattice::kVoronoi;
  std::vector<EtaPoint> points;        ///< increasing p
  std::vector<std::vector<char>> crossed;  ///< [replica][p index]
  std::vector<double> thresholds;      ///< per replica
  /// Replicas crossing at some p but not at a larger p of the grid.
  std::size_t violations = 0;
};

/// Crossing frequency on the p grid with one geometry and one set of
/// uniforms per replica (common random numbers across p).
EtaCurve eta_curve(const std::vector<double>& p_grid, double R, const CampaignSetup& setup,
                   BondLattice lattice = BondLattice::kVoronoi);

/// eta*(p) at a single p.
EtaPoint estimate_eta(double p, double R, const CampaignSetup& setup,
                      BondLattice lattice = BondLattice::kVoronoi);

struct ThresholdEstimate {
  double R = 0.0;
  double lo = 0.0;  ///< eta(lo) < 1/2
  double hi = 1.0;  ///< eta(hi) >= 1/2
  Summary eta_lo;
  Summary eta_hi;
  std::size_t steps = 0;
  /// Median of the per-replica thresholds with an order-statistic 95% interval.
  double median = 0.0;
  double median_low = 0.0;
  double median_high = 0.0;

  double midpoint() const { return 0.5 * (lo + hi); }
};

struct ThresholdResult {
  BondLattice lattice = BondLattice::kVoronoi;
  double tol = 0.0;
  std::vector<ThresholdEstimate> estimates;  ///< one per R
};

/// Bisection on eta(p) >= 1/2 at each R until the bracket is narrower than
/// tol (>= 0.01). Throws NumericError when eta(1) < 1/2.
ThresholdResult estimate_pc_star(const std::vector<double>& R_grid, double tol,
                                 const CampaignSetup& setup,
                                 BondLattice lattice = BondLattice::kVoronoi);

/// Open dual cycle inside outer, avoiding inner, winding around inner's
/// centre. Exact: each link crossing the horizontal ray from the centre
/// carries +-1, and a nonzero-winding cycle exists iff no integer potential
/// on the open subgraph is consistent with those weights.
bool circuit_exists(const BondConfiguration& config, const Rect& inner, const Rect& outer,
                    const VoronoiDiagram& diagram);

/// Sufficient condition for circuit_exists: open long-way crossings of the
/// four rectangles making up the annulus.
bool circuit_four_rectangles(const BondConfiguration& config, const Rect& inner, const Rect& outer,
                             const VoronoiDiagram& diagram);

enum class GoodBoxVariant { kY, kZ, kV, kW };

/// Parses "Y", "Z", "V", "W".
GoodBoxVariant parse_good_box_variant(std::string_view name);

struct GoodBoxParams {
  double L = 1.0;
  Site first{};
  Site last{};
  /// W: threshold eps of the coupled field (open iff tau >= eps).
  double eps = 1.0;
};

/// Inputs a variant may need. The diagram may be null for an empty point
/// set; V needs bonds, W needs weights.
struct GoodBoxInputs {
  const PointSet* points = nullptr;
  const VoronoiDiagram* diagram = nullptr;
  const BondConfiguration* bonds = nullptr;
  const EdgeWeights* weights = nullptr;
};

/// Per-site good-box indicator over the grid of boxes B_z^{1/2, L}:
///   Z: the box is full;
///   Y: every box of the ring |z' - z|_inf = 1 is full;
///   V: every box with |z' - z|_inf <= 1 is full and holds at most 4 L^2
///      points, and every dual edge meeting one of them is open;
///   W: every box with |z' - z|_inf = 2 is full and an open circuit of the
///      threshold field surrounds B_z^{1/2, L} inside B_z^{3/2, L}
///      (a sufficient condition for t(gamma) >= eps across the annulus).
std::vector<char> classify_good_boxes(GoodBoxVariant variant, const GoodBoxParams& params,
                                      const GoodBoxInputs& inputs);

}  // namespace fppdt
