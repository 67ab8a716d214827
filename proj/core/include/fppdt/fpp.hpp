#pragma once

#include <limits>
#include <span>
#include <vector>

#include "fppdt/voronoi.hpp"
#include "fppdt/weights.hpp"

namespace fppdt {

inline constexpr double kUnreached = std::numeric_limits<double>::infinity();

/// Label-setting single-source shortest paths with a binary heap. Vertices
/// are settled in (distance, index) order. Scratch space is reused across
/// runs, so one instance serves many queries on the same graph.
class ShortestPaths {
 public:
  ShortestPaths(const DelaunayGraph& graph, const EdgeWeights& weights);

  /// Settles vertices from source until the heap empties, the next label
  /// exceeds horizon, or every target is settled together with all
  /// vertices tied with the farthest target. `banned` edge is ignored.
  void run(VertexId source, double horizon = kUnreached, std::span<const VertexId> targets = {},
           EdgeId banned = kNone);

  double distance(VertexId v) const { return dist_[static_cast<std::size_t>(v)]; }
  bool settled(VertexId v) const { return done_[static_cast<std::size_t>(v)] != 0; }
  /// Settled vertices in settling order (nondecreasing distance).
  std::span<const VertexId> settled_order() const { return order_; }

  const DelaunayGraph& graph() const { return *graph_; }
  const EdgeWeights& weights() const { return *weights_; }

 private:
  const DelaunayGraph* graph_;
  const EdgeWeights* weights_;
  std::vector<double> dist_;
  std::vector<char> done_;
  std::vector<VertexId> touched_;
  std::vector<VertexId> order_;
};

struct PassageResult {
  double time = 0.0;
  /// Lexicographically smallest vertex sequence among all geodesics.
  std::vector<VertexId> geodesic;
};

/// T(u, v) with its lexicographically smallest geodesic. Throws NumericError
/// when v cannot be reached.
PassageResult first_passage_time(const DelaunayGraph& graph, const EdgeWeights& weights, VertexId u,
                                 VertexId v);

/// T(u, v) only.
double passage_time(const DelaunayGraph& graph, const EdgeWeights& weights, VertexId u, VertexId v);

/// T(x, y) := T(v(x), v(y)).
PassageResult point_passage_time(Point x, Point y, const VoronoiDiagram& diagram,
                                 const EdgeWeights& weights);

/// T(source, .) for every vertex (kUnreached where disconnected).
std::vector<double> passage_times(const DelaunayGraph& graph, const EdgeWeights& weights,
                                  VertexId source);

struct ReachedSet {
  double horizon = 0.0;
  std::vector<VertexId> vertices;  ///< increasing index order
};

/// {v : T(source, v) <= t}. Throws InvalidArgument for negative t.
ReachedSet reached_set(const DelaunayGraph& graph, const EdgeWeights& weights, VertexId source,
                       double t);

/// Sum of weights along a vertex path, accumulated front to back. Throws
/// InvalidArgument when consecutive vertices are not adjacent.
double path_time(const DelaunayGraph& graph, const EdgeWeights& weights,
                 std::span<const VertexId> path);

/// True when at least two distinct self-avoiding paths from u to v attain
/// T(u, v) exactly. Any second geodesic must omit some edge of the first,
/// so it suffices to recompute T with each edge of one geodesic removed.
bool has_geodesic_tie(const DelaunayGraph& graph, const EdgeWeights& weights, VertexId u, VertexId v);

}  // namespace fppdt
