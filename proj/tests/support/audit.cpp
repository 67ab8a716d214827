#include <algorithm>
#include <cmath>
#include <map>

#include "fppdt/rng.hpp"
#include "oracles.hpp"

namespace oracle {
namespace {

// Double evaluation with a crude relative guard; exact when the guard trips.
int fast_in_circle(Point a, Point b, Point c, Point d) {
  const double ax = a.x - d.x, ay = a.y - d.y, bx = b.x - d.x, by = b.y - d.y, cx = c.x - d.x, cy = c.y - d.y;
  const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const double det = a2 * (bx * cy - by * cx) + b2 * (cx * ay - cy * ax) + c2 * (ax * by - ay * bx);
  const double mag = a2 * (std::abs(bx * cy) + std::abs(by * cx)) + b2 * (std::abs(cx * ay) + std::abs(cy * ax)) +
                     c2 * (std::abs(ax * by) + std::abs(ay * bx));
  if (std::abs(det) > 1e-12 * mag) return det > 0 ? 1 : -1;
  return in_circle(a, b, c, d);
}

double norm(Point p) { return std::hypot(p.x, p.y); }

}  // namespace

GeometryAudit audit_geometry(const fppdt::Tessellation& tess, std::size_t locate_queries, std::uint64_t seed,
                             double tolerance) {
  using namespace fppdt;
  GeometryAudit out;
  const DelaunayGraph& g = tess.graph();
  const VoronoiDiagram& vd = tess.diagram();
  const auto pts = g.vertices().points();
  const std::size_t V = g.vertex_count(), E = g.edge_count(), T = g.triangle_count();

  for (const Triangle& t : g.triangles()) {
    ++out.triangles_checked;
    const Point a = pts[static_cast<std::size_t>(t.v[0])], b = pts[static_cast<std::size_t>(t.v[1])],
                c = pts[static_cast<std::size_t>(t.v[2])];
    if (orient(a, b, c) <= 0) {
      ++out.empty_circle_failures;
      continue;
    }
    for (std::size_t i = 0; i < V; ++i) {
      const auto vi = static_cast<VertexId>(i);
      if (vi == t.v[0] || vi == t.v[1] || vi == t.v[2]) continue;
      if (fast_in_circle(a, b, c, pts[i]) > 0) ++out.empty_circle_failures;
    }
  }

  // edges of the triangles, with multiplicity
  std::map<std::pair<VertexId, VertexId>, int> sides;
  for (const Triangle& t : g.triangles()) {
    for (int k = 0; k < 3; ++k) {
      const VertexId u = t.v[static_cast<std::size_t>(k)], w = t.v[static_cast<std::size_t>((k + 1) % 3)];
      ++sides[{std::min(u, w), std::max(u, w)}];
    }
  }
  std::size_t hull = 0;
  if (sides.size() != E) out.edges_match_triangles = false;
  for (const auto& [key, count] : sides) {
    if (count > 2 || !g.edge_index(key.first, key.second)) out.edges_match_triangles = false;
    if (count == 1) ++hull;
  }
  const auto iv = static_cast<long long>(V), ie = static_cast<long long>(E), it = static_cast<long long>(T),
             ih = static_cast<long long>(hull);
  out.euler = iv - ie + (it + 1) == 2 && ie == 3 * iv - 3 - ih && it == 2 * iv - 2 - ih;

  std::size_t interior = 0;
  for (std::size_t e = 0; e < E; ++e) {
    const auto id = static_cast<EdgeId>(e);
    const std::int32_t d = vd.dual_index(id);
    if (g.is_hull_edge(id)) {
      if (d != kNone) out.duality = false;
      continue;
    }
    ++interior;
    if (d == kNone || vd.primal_edge(d) != id) {
      out.duality = false;
      continue;
    }
    const auto tri = g.edge_triangles(id);
    const auto seg = vd.dual_segment(d);
    if (!(seg[0] == vd.vertex(tri[0])) || !(seg[1] == vd.vertex(tri[1]))) out.duality = false;
    const Edge ed = g.edge(id);
    const Point pa = pts[static_cast<std::size_t>(ed.a)], pb = pts[static_cast<std::size_t>(ed.b)];
    const Point dir = seg[1] - seg[0], ab = pb - pa;
    const double scale = norm(ab) * (norm(dir) + norm(ab));
    if (std::abs(dot(dir, ab)) > tolerance * scale) ++out.perpendicular_failures;
    // both circumcentres equidistant from the edge endpoints
    for (const Point c : seg) {
      if (std::abs(distance(c, pa) - distance(c, pb)) > tolerance * (distance(c, pa) + norm(ab))) {
        ++out.perpendicular_failures;
      }
    }
  }
  if (interior != vd.dual_edge_count()) out.duality = false;

  if (locate_queries > 0) {
    Rng rng(seed);
    const Rect adm = g.vertices().window().admissible();
    for (std::size_t q = 0; q < locate_queries; ++q) {
      const Point x{rng.uniform(adm.lo.x, adm.hi.x), rng.uniform(adm.lo.y, adm.hi.y)};
      ++out.locate_queries;
      if (locate_tile(x, vd) != nearest(pts, x)) ++out.locate_failures;
    }
  }
  return out;
}

}  // namespace oracle
