#include "fppdt/fpp.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>
#include <utility>

namespace fppdt {

ShortestPaths::ShortestPaths(const DelaunayGraph& graph, const EdgeWeights& weights)
    : graph_(&graph), weights_(&weights), dist_(graph.vertex_count(), kUnreached),
      done_(graph.vertex_count(), 0) {
  check_weights(graph, weights);
}

void ShortestPaths::run(VertexId source, double horizon, std::span<const VertexId> targets,
                        EdgeId banned) {
  for (const VertexId v : touched_) {
    dist_[static_cast<std::size_t>(v)] = kUnreached;
    done_[static_cast<std::size_t>(v)] = 0;
  }
  touched_.clear();
  order_.clear();
  if (source < 0 || static_cast<std::size_t>(source) >= dist_.size()) {
    throw InvalidArgument("source vertex out of range");
  }

  using Entry = std::pair<double, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist_[static_cast<std::size_t>(source)] = 0.0;
  touched_.push_back(source);
  heap.emplace(0.0, source);
  std::size_t targets_left = 0;
  for (const VertexId t : targets) {
    if (t < 0 || static_cast<std::size_t>(t) >= dist_.size()) throw InvalidArgument("target vertex out of range");
    ++targets_left;
  }
  double stop_after = kUnreached;

  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    if (d > horizon || d > stop_after) break;
    heap.pop();
    const auto vi = static_cast<std::size_t>(v);
    if (done_[vi] || d != dist_[vi]) continue;
    done_[vi] = 1;
    order_.push_back(v);
    if (targets_left > 0 && std::find(targets.begin(), targets.end(), v) != targets.end()) {
      // A vertex may be listed twice; count each listing once settled.
      targets_left -= static_cast<std::size_t>(std::count(targets.begin(), targets.end(), v));
      if (targets_left == 0) stop_after = d;
    }
    const auto nb = graph_->neighbors(v);
    const auto inc = graph_->incident_edges(v);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (inc[k] == banned) continue;
      const auto wi = static_cast<std::size_t>(nb[k]);
      if (done_[wi]) continue;
      const double nd = d + (*weights_)[inc[k]];
      if (nd < dist_[wi]) {
        if (dist_[wi] == kUnreached) touched_.push_back(nb[k]);
        dist_[wi] = nd;
        heap.emplace(nd, nb[k]);
      }
    }
  }
}

namespace {

void check_vertex(const DelaunayGraph& graph, VertexId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= graph.vertex_count()) {
    throw InvalidArgument("vertex " + std::to_string(v) + " not in graph");
  }
}

// Lexicographically smallest geodesic from u to v, given labels settled for
// every vertex at distance <= T(u, v).
std::vector<VertexId> lex_geodesic(const ShortestPaths& sp, VertexId u, VertexId v) {
  const DelaunayGraph& g = sp.graph();
  const EdgeWeights& w = sp.weights();
  auto tight = [&](VertexId a, VertexId b, EdgeId e) {
    return sp.settled(a) && sp.settled(b) && sp.distance(a) + w[e] == sp.distance(b);
  };

  // Vertices from which v is reachable along tight edges.
  std::vector<char> useful(g.vertex_count(), 0);
  std::vector<VertexId> stack{v};
  useful[static_cast<std::size_t>(v)] = 1;
  while (!stack.empty()) {
    const VertexId b = stack.back();
    stack.pop_back();
    const auto nb = g.neighbors(b);
    const auto inc = g.incident_edges(b);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const VertexId a = nb[k];
      if (!useful[static_cast<std::size_t>(a)] && tight(a, b, inc[k])) {
        useful[static_cast<std::size_t>(a)] = 1;
        stack.push_back(a);
      }
    }
  }

  std::vector<VertexId> path{u};
  std::vector<char> visited(g.vertex_count(), 0);
  visited[static_cast<std::size_t>(u)] = 1;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexId> touched;

  // Can v be reached from y along tight edges without visiting the path?
  auto reachable_avoiding = [&](VertexId y) {
    for (const VertexId t : touched) seen[static_cast<std::size_t>(t)] = 0;
    touched.assign(1, y);
    seen[static_cast<std::size_t>(y)] = 1;
    std::vector<VertexId> work{y};
    while (!work.empty()) {
      const VertexId a = work.back();
      work.pop_back();
      if (a == v) return true;
      const auto nb = g.neighbors(a);
      const auto inc = g.incident_edges(a);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        const auto bi = static_cast<std::size_t>(nb[k]);
        if (seen[bi] || visited[bi] || !useful[bi] || !tight(a, nb[k], inc[k])) continue;
        seen[bi] = 1;
        touched.push_back(nb[k]);
        work.push_back(nb[k]);
      }
    }
    return false;
  };

  VertexId x = u;
  while (x != v) {
    const auto nb = g.neighbors(x);
    const auto inc = g.incident_edges(x);
    VertexId next = kNone;
    for (std::size_t k = 0; k < nb.size() && next == kNone; ++k) {
      const VertexId y = nb[k];
      const auto yi = static_cast<std::size_t>(y);
      if (visited[yi] || !useful[yi] || !tight(x, y, inc[k])) continue;
      // A strictly positive step lands on labels above every visited
      // vertex, so no later step can collide with the path.
      if (sp.distance(y) > sp.distance(x) || reachable_avoiding(y)) next = y;
    }
    if (next == kNone) throw NumericError("geodesic reconstruction failed");
    visited[static_cast<std::size_t>(next)] = 1;
    path.push_back(next);
    x = next;
  }
  return path;
}

}  // namespace

PassageResult first_passage_time(const DelaunayGraph& graph, const EdgeWeights& weights, VertexId u,
                                 VertexId v) {
  check_vertex(graph, u);
  check_vertex(graph, v);
  ShortestPaths sp(graph, weights);
  const VertexId target[] = {v};
  sp.run(u, kUnreached, target);
  if (!sp.settled(v)) throw NumericError("target vertex unreachable (graph disconnected)");
  return {sp.distance(v), lex_geodesic(sp, u, v)};
}

double passage_time(const DelaunayGraph& graph, const EdgeWeights& weights, VertexId u, VertexId v) {
  check_vertex(graph, u);
  check_vertex(graph, v);
  ShortestPaths sp(graph, weights);
  const VertexId target[] = {v};
  sp.run(u, kUnreached, target);
  if (!sp.settled(v)) throw NumericError("target vertex unreachable (graph disconnected)");
  return sp.distance(v);
}

PassageResult point_passage_time(Point x, Point y, const VoronoiDiagram& diagram,
                                 const EdgeWeights& weights) {
  const VertexId u = locate_tile(x, diagram);
  const VertexId v = locate_tile(y, diagram);
  return first_passage_time(diagram.delaunay(), weights, u, v);
}

std::vector<double> passage_times(const DelaunayGraph& graph, const EdgeWeights& weights,
                                  VertexId source) {
  ShortestPaths sp(graph, weights);
  sp.run(source);
  std::vector<double> out(graph.vertex_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sp.distance(static_cast<VertexId>(i));
  return out;
}

ReachedSet reached_set(const DelaunayGraph& graph, const EdgeWeights& weights, VertexId source,
                       double t) {
  if (!(t >= 0.0)) throw InvalidArgument("reached set needs t >= 0");
  check_vertex(graph, source);
  ShortestPaths sp(graph, weights);
  sp.run(source, t);
  ReachedSet r;
  r.horizon = t;
  r.vertices.assign(sp.settled_order().begin(), sp.settled_order().end());
  std::sort(r.vertices.begin(), r.vertices.end());
  return r;
}

double path_time(const DelaunayGraph& graph, const EdgeWeights& weights,
                 std::span<const VertexId> path) {
  check_weights(graph, weights);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto e = graph.edge_index(path[i], path[i + 1]);
    if (!e) throw InvalidArgument("path uses a non-edge");
    total += weights[*e];
  }
  return total;
}

bool has_geodesic_tie(const DelaunayGraph& graph, const EdgeWeights& weights, VertexId u, VertexId v) {
  const PassageResult best = first_passage_time(graph, weights, u, v);
  if (u == v) return false;
  ShortestPaths sp(graph, weights);
  const VertexId target[] = {v};
  for (std::size_t i = 0; i + 1 < best.geodesic.size(); ++i) {
    const EdgeId e = *graph.edge_index(best.geodesic[i], best.geodesic[i + 1]);
    sp.run(u, best.time, target, e);
    if (sp.settled(v) && sp.distance(v) == best.time) return true;
  }
  return false;
}

}  // namespace fppdt
