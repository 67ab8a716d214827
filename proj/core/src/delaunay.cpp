#include "fppdt/delaunay.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fppdt/predicates.hpp"

namespace fppdt {
namespace {

using predicates::incircle;
using predicates::orient2d;

constexpr VertexId kInf = -1;

struct Tri {
  std::array<VertexId, 3> v{};
  std::array<TriangleId, 3> n{kNone, kNone, kNone};
  bool alive = true;

  bool ghost() const { return v[0] == kInf || v[1] == kInf || v[2] == kInf; }
  int slot_of(VertexId x) const { return v[0] == x ? 0 : (v[1] == x ? 1 : 2); }
  int slot_of_neighbor(TriangleId t) const { return n[0] == t ? 0 : (n[1] == t ? 1 : 2); }
};

struct BoundaryEdge {
  VertexId a;
  VertexId b;
  TriangleId outside;
  int outside_slot;
  TriangleId created;
};

class Builder {
 public:
  explicit Builder(std::span<const Point> pts) : pts_(pts) {}

  std::vector<Tri> run() {
    const std::size_t first = bootstrap();
    for (std::size_t i = first; i < pts_.size(); ++i) insert(static_cast<VertexId>(i));
    return std::move(tris_);
  }

 private:
  Point P(VertexId v) const { return pts_[static_cast<std::size_t>(v)]; }

  [[noreturn]] static void duplicate(VertexId v) {
    throw InvalidArgument("duplicate point at index " + std::to_string(v));
  }

  TriangleId make(VertexId a, VertexId b, VertexId c) {
    Tri t;
    t.v = {a, b, c};
    if (!free_.empty()) {
      const TriangleId id = free_.back();
      free_.pop_back();
      tris_[static_cast<std::size_t>(id)] = t;
      return id;
    }
    tris_.push_back(t);
    stamp_.push_back(0);
    conflict_.push_back(0);
    return static_cast<TriangleId>(tris_.size() - 1);
  }

  Tri& T(TriangleId t) { return tris_[static_cast<std::size_t>(t)]; }

  // Triangulates the leading collinear run plus the first point off its
  // line; returns the index of the next point to insert.
  std::size_t bootstrap() {
    const std::size_t n = pts_.size();
    if (n < 3) throw InvalidArgument("Delaunay triangulation needs at least 3 points");
    if (P(0) == P(1)) duplicate(1);
    std::size_t apex = 2;
    while (apex < n && orient2d(P(0), P(1), P(static_cast<VertexId>(apex))) == 0) ++apex;
    if (apex == n) throw InvalidArgument("all points are collinear");

    std::vector<VertexId> chain(apex);
    for (std::size_t i = 0; i < apex; ++i) chain[i] = static_cast<VertexId>(i);
    std::sort(chain.begin(), chain.end(), [&](VertexId a, VertexId b) {
      const Point pa = P(a), pb = P(b);
      return pa.x < pb.x || (pa.x == pb.x && (pa.y < pb.y || (pa.y == pb.y && a < b)));
    });
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (P(chain[i]) == P(chain[i + 1])) duplicate(std::max(chain[i], chain[i + 1]));
    }

    const auto q = static_cast<VertexId>(apex);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const VertexId a = chain[i];
      const VertexId b = chain[i + 1];
      if (orient2d(P(a), P(b), P(q)) > 0) {
        make(a, b, q);
      } else {
        make(b, a, q);
      }
    }

    std::map<std::pair<VertexId, VertexId>, std::pair<TriangleId, int>> directed;
    auto record = [&](TriangleId id) {
      const Tri& t = T(id);
      for (int i = 0; i < 3; ++i) {
        directed[{t.v[(i + 1) % 3], t.v[(i + 2) % 3]}] = {id, i};
      }
    };
    const auto finite = static_cast<TriangleId>(tris_.size());
    for (TriangleId id = 0; id < finite; ++id) record(id);
    for (TriangleId id = 0; id < finite; ++id) {
      const Tri t = T(id);
      for (int i = 0; i < 3; ++i) {
        const VertexId x = t.v[(i + 1) % 3];
        const VertexId y = t.v[(i + 2) % 3];
        if (!directed.contains({y, x})) record(make(y, x, kInf));
      }
    }
    for (auto& [edge, where] : directed) {
      const auto twin = directed.find({edge.second, edge.first});
      T(where.first).n[static_cast<std::size_t>(where.second)] = twin->second.first;
    }
    last_ = 0;
    return apex + 1;
  }

  bool in_conflict(const Tri& t, Point p) const {
    if (!t.ghost()) return incircle(P(t.v[0]), P(t.v[1]), P(t.v[2]), p) > 0;
    const int inf = t.slot_of(kInf);
    const Point a = P(t.v[static_cast<std::size_t>((inf + 1) % 3)]);
    const Point b = P(t.v[static_cast<std::size_t>((inf + 2) % 3)]);
    const int o = orient2d(a, b, p);
    if (o != 0) return o > 0;
    // Collinear with a hull edge: in conflict only inside the open segment.
    return predicates::on_segment(a, b, p) && p != a && p != b;
  }

  TriangleId locate(Point p) {
    TriangleId t = last_;
    if (!T(t).alive) t = first_alive();
    if (T(t).ghost()) t = T(t).n[static_cast<std::size_t>(T(t).slot_of(kInf))];
    const std::size_t limit = 4 * tris_.size() + 16;
    for (std::size_t step = 0; step < limit; ++step) {
      const Tri& cur = T(t);
      if (cur.ghost()) return t;
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        const int i = static_cast<int>((static_cast<std::size_t>(k) + step) % 3);
        const VertexId a = cur.v[static_cast<std::size_t>((i + 1) % 3)];
        const VertexId b = cur.v[static_cast<std::size_t>((i + 2) % 3)];
        if (orient2d(P(a), P(b), p) < 0) {
          t = cur.n[static_cast<std::size_t>(i)];
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
    // The visibility walk terminates on Delaunay triangulations; the scan
    // below is only reached if that guarantee were ever violated.
    for (TriangleId id = 0; id < static_cast<TriangleId>(tris_.size()); ++id) {
      if (T(id).alive && in_conflict(T(id), p)) return id;
    }
    throw NumericError("Delaunay point location failed");
  }

  TriangleId first_alive() {
    for (TriangleId id = 0; id < static_cast<TriangleId>(tris_.size()); ++id) {
      if (T(id).alive) return id;
    }
    throw NumericError("empty triangulation");
  }

  void insert(VertexId pv) {
    const Point p = P(pv);
    const TriangleId start = locate(p);
    {
      const Tri& s = T(start);
      for (const VertexId v : s.v) {
        if (v != kInf && P(v) == p) duplicate(pv);
      }
    }
    if (!in_conflict(T(start), p)) throw NumericError("located triangle not in conflict");

    ++epoch_;
    cavity_.clear();
    boundary_.clear();
    stack_.clear();
    stamp_[static_cast<std::size_t>(start)] = epoch_;
    conflict_[static_cast<std::size_t>(start)] = 1;
    stack_.push_back(start);
    while (!stack_.empty()) {
      const TriangleId c = stack_.back();
      stack_.pop_back();
      cavity_.push_back(c);
      for (int i = 0; i < 3; ++i) {
        const TriangleId nb = T(c).n[static_cast<std::size_t>(i)];
        const auto nbi = static_cast<std::size_t>(nb);
        if (stamp_[nbi] != epoch_) {
          stamp_[nbi] = epoch_;
          conflict_[nbi] = in_conflict(T(nb), p) ? 1 : 0;
          if (conflict_[nbi]) {
            stack_.push_back(nb);
            continue;
          }
        }
        if (!conflict_[nbi]) {
          const Tri& ct = T(c);
          boundary_.push_back({ct.v[static_cast<std::size_t>((i + 1) % 3)],
                               ct.v[static_cast<std::size_t>((i + 2) % 3)], nb,
                               T(nb).slot_of_neighbor(c), kNone});
        }
      }
    }

    for (const TriangleId c : cavity_) {
      T(c).alive = false;
      free_.push_back(c);
    }
    for (BoundaryEdge& e : boundary_) {
      e.created = make(e.a, e.b, pv);
      T(e.created).n[2] = e.outside;
      T(e.outside).n[static_cast<std::size_t>(e.outside_slot)] = e.created;
    }
    std::sort(boundary_.begin(), boundary_.end(),
              [](const BoundaryEdge& x, const BoundaryEdge& y) { return x.a < y.a; });
    for (const BoundaryEdge& e : boundary_) {
      const auto it = std::lower_bound(
          boundary_.begin(), boundary_.end(), e.b,
          [](const BoundaryEdge& x, VertexId key) { return x.a < key; });
      if (it == boundary_.end() || it->a != e.b) throw NumericError("cavity boundary is not a cycle");
      T(e.created).n[0] = it->created;
      T(it->created).n[1] = e.created;
    }
    for (const BoundaryEdge& e : boundary_) {
      if (!T(e.created).ghost()) {
        last_ = e.created;
        break;
      }
    }
  }

  std::span<const Point> pts_;
  std::vector<Tri> tris_;
  std::vector<TriangleId> free_;
  std::vector<std::uint32_t> stamp_;
  std::vector<char> conflict_;
  std::vector<TriangleId> cavity_;
  std::vector<TriangleId> stack_;
  std::vector<BoundaryEdge> boundary_;
  std::uint32_t epoch_ = 0;
  TriangleId last_ = 0;
};

Triangle canonical(const std::array<VertexId, 3>& v) {
  int m = 0;
  if (v[1] < v[m]) m = 1;
  if (v[2] < v[m]) m = 2;
  const auto i = static_cast<std::size_t>(m);
  return Triangle{{v[i], v[(i + 1) % 3], v[(i + 2) % 3]}};
}

}  // namespace

std::span<const VertexId> DelaunayGraph::neighbors(VertexId v) const {
  const auto i = static_cast<std::size_t>(v);
  return std::span<const VertexId>(adjacency_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::span<const EdgeId> DelaunayGraph::incident_edges(VertexId v) const {
  const auto i = static_cast<std::size_t>(v);
  return std::span<const EdgeId>(adjacency_edges_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::optional<EdgeId> DelaunayGraph::edge_index(VertexId u, VertexId v) const {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= vertex_count() ||
      static_cast<std::size_t>(v) >= vertex_count()) {
    return std::nullopt;
  }
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
}

std::uint64_t DelaunayGraph::structure_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint32_t word) {
    for (int k = 0; k < 4; ++k) {
      h ^= (word >> (8 * k)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  feed(static_cast<std::uint32_t>(vertex_count()));
  for (const Edge& e : edges_) {
    feed(static_cast<std::uint32_t>(e.a));
    feed(static_cast<std::uint32_t>(e.b));
  }
  for (const Triangle& t : triangles_) {
    for (const VertexId v : t.v) feed(static_cast<std::uint32_t>(v));
  }
  return h;
}

DelaunayGraph build_delaunay(const PointSet& points) {
  Builder builder(points.points());
  const std::vector<Tri> tris = builder.run();

  DelaunayGraph g(points);
  for (const Tri& t : tris) {
    if (t.alive && !t.ghost()) g.triangles_.push_back(canonical(t.v));
  }
  std::sort(g.triangles_.begin(), g.triangles_.end());

  g.edges_.reserve(3 * g.triangles_.size() / 2 + 8);
  for (const Triangle& t : g.triangles_) {
    for (int i = 0; i < 3; ++i) {
      const VertexId a = t.v[static_cast<std::size_t>(i)];
      const VertexId b = t.v[static_cast<std::size_t>((i + 1) % 3)];
      g.edges_.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  const std::size_t nv = points.size();
  g.offsets_.assign(nv + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[static_cast<std::size_t>(e.a) + 1];
    ++g.offsets_[static_cast<std::size_t>(e.b) + 1];
  }
  for (std::size_t i = 0; i < nv; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(g.offsets_[nv]);
  g.adjacency_edges_.resize(g.offsets_[nv]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (a, b), so each adjacency list is filled in
  // increasing neighbour order without a separate sort.
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    const Edge& ed = g.edges_[e];
    const auto ai = static_cast<std::size_t>(ed.a);
    g.adjacency_[cursor[ai]] = ed.b;
    g.adjacency_edges_[cursor[ai]++] = static_cast<EdgeId>(e);
  }
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    const Edge& ed = g.edges_[e];
    const auto bi = static_cast<std::size_t>(ed.b);
    g.adjacency_[cursor[bi]] = ed.a;
    g.adjacency_edges_[cursor[bi]++] = static_cast<EdgeId>(e);
  }
  for (std::size_t v = 0; v < nv; ++v) {
    // Lower-indexed neighbours (from the second pass) must precede; merge.
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    if (std::is_sorted(first, last)) continue;
    std::vector<std::pair<VertexId, EdgeId>> tmp;
    for (std::size_t k = g.offsets_[v]; k < g.offsets_[v + 1]; ++k) {
      tmp.emplace_back(g.adjacency_[k], g.adjacency_edges_[k]);
    }
    std::sort(tmp.begin(), tmp.end());
    for (std::size_t k = 0; k < tmp.size(); ++k) {
      g.adjacency_[g.offsets_[v] + k] = tmp[k].first;
      g.adjacency_edges_[g.offsets_[v] + k] = tmp[k].second;
    }
  }

  g.edge_triangles_.assign(g.edges_.size(), {kNone, kNone});
  for (std::size_t ti = 0; ti < g.triangles_.size(); ++ti) {
    const Triangle& t = g.triangles_[ti];
    for (int i = 0; i < 3; ++i) {
      const VertexId a = t.v[static_cast<std::size_t>(i)];
      const VertexId b = t.v[static_cast<std::size_t>((i + 1) % 3)];
      const EdgeId e = *g.edge_index(a, b);
      g.edge_triangles_[static_cast<std::size_t>(e)][a < b ? 0 : 1] = static_cast<TriangleId>(ti);
    }
  }
  return g;
}

Point circumcenter(Point a, Point b, Point c) {
  using L = long double;
  const L bx = static_cast<L>(b.x) - a.x;
  const L by = static_cast<L>(b.y) - a.y;
  const L cx = static_cast<L>(c.x) - a.x;
  const L cy = static_cast<L>(c.y) - a.y;
  const L d = 2 * (bx * cy - by * cx);
  const L b2 = bx * bx + by * by;
  const L c2 = cx * cx + cy * cy;
  const L ux = (cy * b2 - by * c2) / d;
  const L uy = (bx * c2 - cx * b2) / d;
  return {static_cast<double>(a.x + ux), static_cast<double>(a.y + uy)};
}

}  // namespace fppdt
