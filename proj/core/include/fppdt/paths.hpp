#pragma once

#include <cstdint>
#include <vector>

#include "fppdt/campaign.hpp"
#include "fppdt/fpp.hpp"
#include "fppdt/stats.hpp"
#include "fppdt/voronoi.hpp"
#include "fppdt/weights.hpp"

namespace fppdt {

struct VertexPath {
  std::vector<VertexId> vertices;
  bool self_avoiding = true;

  std::size_t edges() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Checks adjacency of consecutive vertices and sets the self-avoidance flag.
VertexPath make_path(const DelaunayGraph& graph, std::vector<VertexId> vertices);

/// Offset applied to both ends of a query that touches a Voronoi vertex or
/// starts or ends on a tile boundary: kWalkOffset * (1, golden ratio).
inline constexpr double kWalkOffset = 1e-9;
inline constexpr double kGoldenRatio = 1.6180339887498948482;

struct SegmentWalk {
  VertexPath path;
  /// Query actually walked (differs from the input when perturbed).
  Point from;
  Point to;
  bool perturbed = false;
};

/// Tiles met by [x, y] in order: starting at v(x), each step moves to the
/// neighbour (other than the previous vertex) whose shared Voronoi edge
/// crosses the segment, until v(y). Throws NumericError when the query
/// stays degenerate after the offset.
SegmentWalk segment_walk(Point x, Point y, const VoronoiDiagram& diagram);

/// Sites z whose closed box B_z^{1/2, L} meets a segment of the path (or
/// the vertex itself for a one-vertex path). Sorted.
std::vector<Site> path_animal(const VertexPath& path, const DelaunayGraph& graph, double L);

/// Sites whose closed box of side L meets [p, q].
std::vector<Site> segment_boxes(Point p, Point q, double L);

inline constexpr int kMaxExactPathEdges = 9;
inline constexpr int kMaxCountedSteps = 10;

/// g_d and G_d for d = 1..r over self-avoiding paths from v: g_d is the
/// smallest animal among paths of at least d edges (attained at exactly d,
/// animals only grow along a path), G_d the largest among paths of at most
/// d edges. Index 0 holds the one-vertex path. r <= 9.
struct AnimalExtrema {
  std::vector<std::size_t> g;
  std::vector<std::size_t> G;
};
AnimalExtrema path_animal_extrema(const DelaunayGraph& graph, VertexId v, int r, double L);

/// t_r: the least passage time over self-avoiding paths from v with at least
/// r edges. Weights are nonnegative, so it is attained at exactly r edges.
/// kUnreached when no such path exists. r <= 9.
double cheapest_long_path(const DelaunayGraph& graph, const EdgeWeights& weights, VertexId v, int r);

/// Number of self-avoiding r-step paths from v and its logarithm. r <= 10.
struct SelfAvoidingCount {
  std::uint64_t count = 0;
  double kappa = 0.0;  ///< log count (-inf when zero)
};
SelfAvoidingCount count_self_avoiding(const DelaunayGraph& graph, VertexId v, int r);

struct WalkLengthRow {
  double r = 0.0;
  Summary ratio;           ///< |gamma_r| / r, |gamma_r| counted in vertices
  QuantileEstimate q99;
  std::vector<double> tail;  ///< frequency of |gamma_r| > z r per z
};

struct WalkLengthResult {
  Point direction{1.0, 1.0};
  std::vector<double> z_grid;
  std::vector<WalkLengthRow> rows;
  std::vector<std::vector<double>> lengths;  ///< [replica][r index]
  std::size_t walks = 0;
  std::size_t self_avoidance_violations = 0;
  std::size_t perturbed = 0;
};

/// gamma_r = segment_walk(0, r * direction) on a centred Poisson window.
WalkLengthResult walk_length_scan(const std::vector<double>& r_grid, const std::vector<double>& z_grid,
                                  const CampaignSetup& setup, Point direction = {1.0, 1.0});

struct MinAnimalRow {
  int r = 0;
  /// Exact rows carry g_r / r and G_r / r; sampled rows carry |A| / r for
  /// the segment walk and for the geodesic to v(r * direction), which are
  /// evidence only, not extrema.
  bool exact = true;
  Summary g_ratio;
  Summary G_ratio;
  Summary walk_ratio;
  Summary geodesic_ratio;
};

struct MinAnimalResult {
  double L = 1.0;
  Point direction{1.0, 1.0};
  std::vector<MinAnimalRow> rows;
};

MinAnimalResult min_animal_scan(const std::vector<int>& r_grid, double L, const CampaignSetup& setup,
                                Point direction = {1.0, 1.0});

struct CheapestPathRow {
  int r = 0;
  Summary below;  ///< frequency of t_r <= c r (Wilson interval)
  Summary ratio;  ///< t_r / r
};

struct CheapestPathResult {
  double c = 0.2;
  std::vector<CheapestPathRow> rows;
  std::vector<std::vector<double>> times;  ///< [replica][r index]
};

/// t_r from v(0) on a centred Poisson window of side 40 (or setup.side).
CheapestPathResult cheapest_path_scan(const WeightDistribution& dist, const std::vector<int>& r_grid, double c,
                                      const CampaignSetup& setup);

struct KappaRow {
  int r = 0;
  Summary count;
  Summary kappa;
  Summary kappa_per_step;
};

struct KappaResult {
  std::vector<KappaRow> rows;
  std::vector<std::vector<std::uint64_t>> counts;  ///< [replica][r - 1]
};

/// N_r and kappa_r from v(0) for r = 1..r_max.
KappaResult kappa_scan(int r_max, const CampaignSetup& setup);

}  // namespace fppdt
