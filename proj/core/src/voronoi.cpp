#include "fppdt/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fppdt {

TileLocator::TileLocator(const PointSet& points) : points_(points.points()) {
  const Rect r = points.window().rect();
  lo_ = r.lo;
  const double n = std::max<double>(1.0, static_cast<double>(points.size()));
  // About two generators per bucket.
  cell_ = std::sqrt(2.0 * r.area() / n);
  if (!(cell_ > 0.0) || !std::isfinite(cell_)) cell_ = std::max(r.width(), r.height());
  nx_ = std::clamp(static_cast<int>(std::ceil(r.width() / cell_)), 1, 1 << 14);
  ny_ = std::clamp(static_cast<int>(std::ceil(r.height() / cell_)), 1, 1 << 14);
  const std::size_t buckets = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  start_.assign(buckets + 1, 0);
  std::vector<std::size_t> bucket_of(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto b = static_cast<std::size_t>(cell_y(points[i].y)) * static_cast<std::size_t>(nx_) +
                   static_cast<std::size_t>(cell_x(points[i].x));
    bucket_of[i] = b;
    ++start_[b + 1];
  }
  for (std::size_t b = 0; b < buckets; ++b) start_[b + 1] += start_[b];
  items_.resize(points.size());
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) items_[fill[bucket_of[i]]++] = static_cast<VertexId>(i);
}

int TileLocator::cell_x(double x) const {
  return std::clamp(static_cast<int>(std::floor((x - lo_.x) / cell_)), 0, nx_ - 1);
}

int TileLocator::cell_y(double y) const {
  return std::clamp(static_cast<int>(std::floor((y - lo_.y) / cell_)), 0, ny_ - 1);
}

VertexId TileLocator::nearest(Point x) const {
  if (points_.empty()) throw PreconditionError("nearest-tile query on an empty point set");
  const int cx = cell_x(x.x);
  const int cy = cell_y(x.y);
  VertexId best = kNone;
  double best_d2 = std::numeric_limits<double>::infinity();
  auto visit = [&](int bx, int by) {
    if (bx < 0 || by < 0 || bx >= nx_ || by >= ny_) return;
    const auto b = static_cast<std::size_t>(by) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(bx);
    for (std::uint32_t k = start_[b]; k < start_[b + 1]; ++k) {
      const VertexId v = items_[k];
      const Point& p = points_[static_cast<std::size_t>(v)];
      const double dx = x.x - p.x;
      const double dy = x.y - p.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2 || (d2 == best_d2 && v < best)) {
        best_d2 = d2;
        best = v;
      }
    }
  };
  const int max_ring = std::max(nx_, ny_);
  for (int ring = 0; ring <= max_ring; ++ring) {
    if (ring == 0) {
      visit(cx, cy);
    } else {
      for (int i = -ring; i <= ring; ++i) {
        visit(cx + i, cy - ring);
        visit(cx + i, cy + ring);
      }
      for (int j = -ring + 1; j <= ring - 1; ++j) {
        visit(cx - ring, cy + j);
        visit(cx + ring, cy + j);
      }
    }
    // Anything beyond this ring is at least ring * cell_ away (clamped
    // queries outside the grid only get farther). Equal distances must be
    // examined too for the index tie-break, hence the small safety factor.
    const double reach = static_cast<double>(ring) * cell_ * (1.0 - 1e-9);
    if (best != kNone && reach * reach > best_d2) break;
  }
  return best;
}

std::array<Point, 2> VoronoiDiagram::dual_segment(std::int32_t dual) const {
  const auto t = dual_endpoints(dual);
  return {vertex(t[0]), vertex(t[1])};
}

std::array<Point, 2> VoronoiDiagram::dual_carrier(EdgeId e) const {
  const auto t = delaunay().edge_triangles(e);
  if (t[0] != kNone && t[1] != kNone) return {vertex(t[0]), vertex(t[1])};
  const Edge& ed = delaunay().edge(e);
  const Point a = delaunay().point(ed.a);
  const Point b = delaunay().point(ed.b);
  const Point d = b - a;
  // The triangle sits on one side of a->b; the ray leaves through the other.
  Point out = t[0] != kNone ? Point{d.y, -d.x} : Point{-d.y, d.x};
  const double len = std::hypot(out.x, out.y);
  out = (1.0 / len) * out;
  const Point c = vertex(t[0] != kNone ? t[0] : t[1]);
  // Reach beyond the window from wherever the circumcentre is.
  const Point mid = 0.5 * (a + b);
  const double extra = std::hypot(c.x - mid.x, c.y - mid.y);
  return {c, c + (ray_length_ + extra) * out};
}

Polygon clip_halfplane(const Polygon& poly, Point origin, Point d, double c) {
  Polygon out;
  if (poly.empty()) return out;
  out.reserve(poly.size() + 1);
  auto value = [&](Point p) { return (p.x - origin.x) * d.x + (p.y - origin.y) * d.y - c; };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point p = poly[i];
    const Point q = poly[(i + 1) % poly.size()];
    const double fp = value(p);
    const double fq = value(q);
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      const double s = fp / (fp - fq);
      out.push_back({p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)});
    }
  }
  return out;
}

double polygon_area(const Polygon& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point p = poly[i];
    const Point q = poly[(i + 1) % poly.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

VoronoiDiagram build_voronoi_dual(const DelaunayGraph& delaunay, const Window& window,
                                  VoronoiOptions options) {
  VoronoiDiagram d(delaunay, window);
  const auto tris = delaunay.triangles();
  d.vertices_.reserve(tris.size());
  for (const Triangle& t : tris) {
    d.vertices_.push_back(circumcenter(delaunay.point(t.v[0]), delaunay.point(t.v[1]),
                                       delaunay.point(t.v[2])));
  }
  d.primal_to_dual_.assign(delaunay.edge_count(), kNone);
  for (EdgeId e = 0; e < static_cast<EdgeId>(delaunay.edge_count()); ++e) {
    if (delaunay.is_hull_edge(e)) continue;
    d.primal_to_dual_[static_cast<std::size_t>(e)] = static_cast<std::int32_t>(d.dual_to_primal_.size());
    d.dual_to_primal_.push_back(e);
  }
  const Rect r = window.rect();
  d.ray_length_ = 2.0 * (r.width() + r.height());

  if (options.cells) {
    const Polygon frame{r.lo, {r.hi.x, r.lo.y}, r.hi, {r.lo.x, r.hi.y}};
    d.cells_.resize(delaunay.vertex_count());
    for (VertexId v = 0; v < static_cast<VertexId>(delaunay.vertex_count()); ++v) {
      const Point pv = delaunay.point(v);
      Polygon cell = frame;
      for (const VertexId w : delaunay.neighbors(v)) {
        const Point dw = delaunay.point(w) - pv;
        cell = clip_halfplane(cell, pv, dw, 0.5 * dot(dw, dw));
      }
      d.cells_[static_cast<std::size_t>(v)] = std::move(cell);
    }
  }
  d.locator_ = TileLocator(delaunay.vertices());
  return d;
}

Tessellation::Tessellation(const PointSet& points, VoronoiOptions options)
    : graph_(std::make_unique<DelaunayGraph>(build_delaunay(points))),
      diagram_(std::make_unique<VoronoiDiagram>(build_voronoi_dual(*graph_, points.window(), options))) {}

VertexId locate_tile(Point x, const VoronoiDiagram& diagram) {
  if (!is_finite(x) || !diagram.window().is_admissible(x)) {
    throw InvalidArgument("query point outside the admissible region");
  }
  return diagram.locator().nearest(x);
}

}  // namespace fppdt
