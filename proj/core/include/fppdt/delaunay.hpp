#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fppdt/geometry.hpp"

namespace fppdt {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using TriangleId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

/// Undirected Delaunay edge, a < b.
struct Edge {
  VertexId a = 0;
  VertexId b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Counter-clockwise triangle rotated so that v[0] is its smallest index.
struct Triangle {
  std::array<VertexId, 3> v{};
  friend bool operator==(const Triangle&, const Triangle&) = default;
  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

/// Delaunay triangulation in canonical form: edges and triangles sorted,
/// adjacency lists sorted by neighbour index. Immutable once built.
class DelaunayGraph {
 public:
  const PointSet& vertices() const { return points_; }
  const Point& point(VertexId v) const { return points_[static_cast<std::size_t>(v)]; }
  std::size_t vertex_count() const { return points_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Triangle> triangles() const { return triangles_; }
  const Triangle& triangle(TriangleId t) const { return triangles_[static_cast<std::size_t>(t)]; }

  /// Neighbours of v in increasing index order.
  std::span<const VertexId> neighbors(VertexId v) const;
  /// Edge ids aligned with neighbors(v).
  std::span<const EdgeId> incident_edges(VertexId v) const;
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  std::optional<EdgeId> edge_index(VertexId u, VertexId v) const;

  /// Triangle on the left of a->b and on the left of b->a (kNone on the hull side).
  std::array<TriangleId, 2> edge_triangles(EdgeId e) const {
    return edge_triangles_[static_cast<std::size_t>(e)];
  }
  bool is_hull_edge(EdgeId e) const {
    const auto t = edge_triangles(e);
    return t[0] == kNone || t[1] == kNone;
  }

  /// FNV-1a over the canonical edge and triangle lists.
  std::uint64_t structure_hash() const;

 private:
  friend DelaunayGraph build_delaunay(const PointSet& points);
  explicit DelaunayGraph(PointSet points) : points_(std::move(points)) {}

  PointSet points_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::vector<std::array<TriangleId, 2>> edge_triangles_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::vector<EdgeId> adjacency_edges_;
};

/// Incremental Delaunay triangulation inserting points in stored order.
///
/// Orientation and in-circle tests are exact. A point exactly on a
/// circumcircle is not in conflict with that triangle, so among cocircular
/// configurations the diagonal created by the earlier-inserted vertices is
/// kept. No perturbation is applied; the output is a function of the input
/// sequence alone.
///
/// Throws InvalidArgument for fewer than 3 points, all-collinear input or
/// duplicate points.
DelaunayGraph build_delaunay(const PointSet& points);

/// Circumcentre of a non-degenerate triangle, evaluated in extended precision.
Point circumcenter(Point a, Point b, Point c);

}  // namespace fppdt
