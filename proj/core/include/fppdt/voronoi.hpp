#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fppdt/delaunay.hpp"

namespace fppdt {

using Polygon = std::vector<Point>;

/// Bucket grid over the window answering nearest-generator queries.
class TileLocator {
 public:
  TileLocator() = default;
  explicit TileLocator(const PointSet& points);

  /// argmin_v |x - v|, lowest index on ties. Any x is accepted; callers
  /// enforce the admissible region.
  VertexId nearest(Point x) const;

 private:
  std::span<const Point> points_;
  Point lo_{};
  double cell_ = 1.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::uint32_t> start_;
  std::vector<VertexId> items_;

  int cell_x(double x) const;
  int cell_y(double y) const;
};

struct VoronoiOptions {
  /// Clip every cell polygon to the window. Costs memory proportional to
  /// the number of generators; the campaigns leave it off.
  bool cells = true;
};

/// Voronoi tessellation dual to a Delaunay triangulation.
///
/// Voronoi vertices are indexed by Delaunay triangle (circumcentres). The
/// Voronoi edge e* dual to an interior Delaunay edge e joins the
/// circumcentres of the two triangles on either side of e; hull edges have
/// unbounded duals and are kept out of the dual-edge list. The diagram
/// refers to the triangulation it was built from, which must outlive it.
class VoronoiDiagram {
 public:
  const DelaunayGraph& delaunay() const { return *graph_; }
  const Window& window() const { return window_; }

  std::span<const Point> vertices() const { return vertices_; }
  const Point& vertex(TriangleId t) const { return vertices_[static_cast<std::size_t>(t)]; }

  /// Bounded Voronoi edges, one per interior Delaunay edge, in increasing
  /// Delaunay edge order.
  std::size_t dual_edge_count() const { return dual_to_primal_.size(); }
  EdgeId primal_edge(std::int32_t dual) const { return dual_to_primal_[static_cast<std::size_t>(dual)]; }
  /// Dual index of a Delaunay edge, or kNone for hull edges.
  std::int32_t dual_index(EdgeId e) const { return primal_to_dual_[static_cast<std::size_t>(e)]; }
  /// Voronoi vertices (triangles) joined by a bounded dual edge.
  std::array<TriangleId, 2> dual_endpoints(std::int32_t dual) const {
    return delaunay().edge_triangles(primal_edge(dual));
  }
  std::array<Point, 2> dual_segment(std::int32_t dual) const;

  /// Geometric carrier of e* for any Delaunay edge. Hull edges yield the
  /// finite segment from the circumcentre of their one triangle out along
  /// the unbounded ray far beyond the window.
  std::array<Point, 2> dual_carrier(EdgeId e) const;

  bool has_cells() const { return !cells_.empty(); }
  /// Cell of generator v intersected with the window (requires cells).
  const Polygon& cell(VertexId v) const { return cells_[static_cast<std::size_t>(v)]; }

  const TileLocator& locator() const { return locator_; }

 private:
  friend VoronoiDiagram build_voronoi_dual(const DelaunayGraph&, const Window&, VoronoiOptions);
  VoronoiDiagram(const DelaunayGraph& graph, const Window& window)
      : graph_(&graph), window_(window) {}

  const DelaunayGraph* graph_;
  Window window_;
  std::vector<Point> vertices_;
  std::vector<EdgeId> dual_to_primal_;
  std::vector<std::int32_t> primal_to_dual_;
  std::vector<Polygon> cells_;
  TileLocator locator_;
  double ray_length_ = 0.0;
};

VoronoiDiagram build_voronoi_dual(const DelaunayGraph& delaunay, const Window& window,
                                  VoronoiOptions options = {});

/// A point set together with its triangulation and Voronoi dual, kept at
/// stable addresses so the diagram's reference to the graph stays valid
/// when the bundle is moved.
class Tessellation {
 public:
  explicit Tessellation(const PointSet& points, VoronoiOptions options = {});

  const PointSet& points() const { return graph_->vertices(); }
  const DelaunayGraph& graph() const { return *graph_; }
  const VoronoiDiagram& diagram() const { return *diagram_; }

 private:
  std::unique_ptr<DelaunayGraph> graph_;
  std::unique_ptr<VoronoiDiagram> diagram_;
};

/// Generator whose tile contains x (nearest, lowest index on ties).
/// Throws InvalidArgument when x lies outside the admissible region.
VertexId locate_tile(Point x, const VoronoiDiagram& diagram);

/// Sutherland-Hodgman clip of a convex polygon to {p : (p - origin) . d <= c}.
Polygon clip_halfplane(const Polygon& poly, Point origin, Point d, double c);

/// Signed area (positive for counter-clockwise vertex order).
double polygon_area(const Polygon& poly);

}  // namespace fppdt
