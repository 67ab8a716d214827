#include "fppdt/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>

#include "fppdt/parallel.hpp"
#include "fppdt/point_process.hpp"
#include "fppdt/predicates.hpp"

namespace fppdt {
namespace {

std::optional<std::vector<VertexId>> try_walk(Point a, Point b, const VoronoiDiagram& diagram) {
  const DelaunayGraph& graph = diagram.delaunay();
  VertexId v = locate_tile(a, diagram);
  const VertexId target = locate_tile(b, diagram);
  std::vector<VertexId> out{v};
  VertexId prev = kNone;
  while (v != target) {
    VertexId next = kNone;
    const auto nbrs = graph.neighbors(v);
    const auto edges = graph.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] == prev) continue;
      const auto carrier = diagram.dual_carrier(edges[i]);
      const predicates::SegmentContact c = predicates::segment_contact(a, b, carrier[0], carrier[1]);
      if (c == predicates::SegmentContact::kTouch) return std::nullopt;
      if (c == predicates::SegmentContact::kProper) {
        if (next != kNone) return std::nullopt;
        next = nbrs[i];
      }
    }
    if (next == kNone) return std::nullopt;
    prev = v;
    v = next;
    out.push_back(v);
    if (out.size() > graph.vertices().size() + 1) throw NumericError("segment walk does not terminate");
  }
  return out;
}

std::int64_t site_key(Site z) {
  return (static_cast<std::int64_t>(z.x) << 32) ^ static_cast<std::uint32_t>(z.y);
}

// Animal of one segment per Delaunay edge, computed on first use.
class EdgeBoxes {
 public:
  EdgeBoxes(const DelaunayGraph& graph, double L) : graph_(graph), L_(L), boxes_(graph.edges().size()) {}

  const std::vector<Site>& operator()(EdgeId e) {
    auto& slot = boxes_[static_cast<std::size_t>(e)];
    if (!slot) {
      const Edge ed = graph_.edges()[static_cast<std::size_t>(e)];
      slot = segment_boxes(graph_.point(ed.a), graph_.point(ed.b), L_);
    }
    return *slot;
  }

 private:
  const DelaunayGraph& graph_;
  double L_;
  std::vector<std::optional<std::vector<Site>>> boxes_;
};

class SiteCounter {
 public:
  void add(const std::vector<Site>& sites) {
    for (const Site z : sites) ++counts_[site_key(z)];
  }
  void remove(const std::vector<Site>& sites) {
    for (const Site z : sites) {
      const auto it = counts_.find(site_key(z));
      if (--it->second == 0) counts_.erase(it);
    }
  }
  std::size_t distinct() const { return counts_.size(); }

 private:
  std::unordered_map<std::int64_t, int> counts_;
};

void check_vertex(const DelaunayGraph& graph, VertexId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= graph.vertices().size()) throw InvalidArgument("vertex id out of range");
}

// Centred window holding every query of a path campaign.
Window path_window(const CampaignSetup& setup, double extent) {
  const double side = setup.side > 0.0 ? setup.side : 2.75 * extent + 16.0;
  if (side < 2.75 * extent) throw InvalidArgument("window side too small for the requested r");
  return Window::centered(side);
}

}  // namespace

VertexPath make_path(const DelaunayGraph& graph, std::vector<VertexId> vertices) {
  for (const VertexId v : vertices) check_vertex(graph, v);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (!graph.edge_index(vertices[i], vertices[i + 1])) {
      throw InvalidArgument("path vertices " + std::to_string(vertices[i]) + " and " +
                            std::to_string(vertices[i + 1]) + " are not adjacent");
    }
  }
  std::vector<VertexId> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  const bool simple = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return {std::move(vertices), simple};
}

SegmentWalk segment_walk(Point x, Point y, const VoronoiDiagram& diagram) {
  const Point offset{kWalkOffset, kWalkOffset * kGoldenRatio};
  if (auto walk = try_walk(x, y, diagram)) {
    return {make_path(diagram.delaunay(), std::move(*walk)), x, y, false};
  }
  const Point a = x + offset;
  const Point b = y + offset;
  if (auto walk = try_walk(a, b, diagram)) {
    return {make_path(diagram.delaunay(), std::move(*walk)), a, b, true};
  }
  throw NumericError("segment query stays degenerate after the offset");
}

std::vector<Site> segment_boxes(Point p, Point q, double L) {
  if (!(L > 0.0)) throw InvalidArgument("box scale L must be positive");
  const int x0 = static_cast<int>(std::floor(std::min(p.x, q.x) / L + 0.5)) - 1;
  const int x1 = static_cast<int>(std::floor(std::max(p.x, q.x) / L + 0.5)) + 1;
  const int y0 = static_cast<int>(std::floor(std::min(p.y, q.y) / L + 0.5)) - 1;
  const int y1 = static_cast<int>(std::floor(std::max(p.y, q.y) / L + 0.5)) + 1;
  const BoxGrid grid(L, 0.5, {x0, y0}, {x1, y1});
  std::vector<Site> out;
  for (int x = x0; x <= x1; ++x) {
    for (int y = y0; y <= y1; ++y) {
      const Rect box = grid.box({x, y});
      const bool hit = p == q ? box.contains(p) : predicates::segment_meets_rect(p, q, box);
      if (hit) out.push_back({x, y});
    }
  }
  return out;
}

std::vector<Site> path_animal(const VertexPath& path, const DelaunayGraph& graph, double L) {
  if (path.vertices.empty()) throw InvalidArgument("path animal of an empty path");
  std::vector<Site> out;
  if (path.vertices.size() == 1) {
    const Point p = graph.point(path.vertices[0]);
    out = segment_boxes(p, p, L);
  }
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    const auto boxes = segment_boxes(graph.point(path.vertices[i]), graph.point(path.vertices[i + 1]), L);
    out.insert(out.end(), boxes.begin(), boxes.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AnimalExtrema path_animal_extrema(const DelaunayGraph& graph, VertexId v, int r, double L) {
  check_vertex(graph, v);
  if (r < 0) throw InvalidArgument("path length must be nonnegative");
  if (r > kMaxExactPathEdges) {
    throw BoundExceeded("exact path enumeration is limited to r <= " + std::to_string(kMaxExactPathEdges));
  }
  const auto n = static_cast<std::size_t>(r) + 1;
  std::vector<std::size_t> lo(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> hi(n, 0);
  EdgeBoxes boxes(graph, L);
  SiteCounter counter;
  std::vector<char> on_path(graph.vertices().size(), 0);
  const Point p = graph.point(v);
  counter.add(segment_boxes(p, p, L));
  on_path[static_cast<std::size_t>(v)] = 1;

  auto dfs = [&](auto&& self, VertexId u, int depth) -> void {
    const std::size_t size = counter.distinct();
    lo[static_cast<std::size_t>(depth)] = std::min(lo[static_cast<std::size_t>(depth)], size);
    hi[static_cast<std::size_t>(depth)] = std::max(hi[static_cast<std::size_t>(depth)], size);
    if (depth == r) return;
    const auto nbrs = graph.neighbors(u);
    const auto edges = graph.incident_edges(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId w = nbrs[i];
      if (on_path[static_cast<std::size_t>(w)]) continue;
      const auto& b = boxes(edges[i]);
      counter.add(b);
      on_path[static_cast<std::size_t>(w)] = 1;
      self(self, w, depth + 1);
      on_path[static_cast<std::size_t>(w)] = 0;
      counter.remove(b);
    }
  };
  dfs(dfs, v, 0);
  for (std::size_t d = 1; d < n; ++d) hi[d] = std::max(hi[d], hi[d - 1]);
  return {std::move(lo), std::move(hi)};
}

double cheapest_long_path(const DelaunayGraph& graph, const EdgeWeights& weights, VertexId v, int r) {
  check_vertex(graph, v);
  if (r < 0) throw InvalidArgument("path length must be nonnegative");
  if (r > kMaxExactPathEdges) {
    throw BoundExceeded("exact path enumeration is limited to r <= " + std::to_string(kMaxExactPathEdges));
  }
  if (weights.values().size() != graph.edges().size()) throw InvalidArgument("weights do not match the graph");
  double best = kUnreached;
  std::vector<char> on_path(graph.vertices().size(), 0);
  on_path[static_cast<std::size_t>(v)] = 1;
  auto dfs = [&](auto&& self, VertexId u, int depth, double time) -> void {
    if (time >= best) return;
    if (depth == r) {
      best = time;
      return;
    }
    const auto nbrs = graph.neighbors(u);
    const auto edges = graph.incident_edges(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId w = nbrs[i];
      if (on_path[static_cast<std::size_t>(w)]) continue;
      on_path[static_cast<std::size_t>(w)] = 1;
      self(self, w, depth + 1, time + weights[edges[i]]);
      on_path[static_cast<std::size_t>(w)] = 0;
    }
  };
  dfs(dfs, v, 0, 0.0);
  return best;
}

SelfAvoidingCount count_self_avoiding(const DelaunayGraph& graph, VertexId v, int r) {
  check_vertex(graph, v);
  if (r < 0) throw InvalidArgument("path length must be nonnegative");
  if (r > kMaxCountedSteps) {
    throw BoundExceeded("self-avoiding counting is limited to r <= " + std::to_string(kMaxCountedSteps));
  }
  std::vector<char> on_path(graph.vertices().size(), 0);
  on_path[static_cast<std::size_t>(v)] = 1;
  auto dfs = [&](auto&& self, VertexId u, int left) -> std::uint64_t {
    if (left == 0) return 1;
    std::uint64_t total = 0;
    for (const VertexId w : graph.neighbors(u)) {
      if (on_path[static_cast<std::size_t>(w)]) continue;
      on_path[static_cast<std::size_t>(w)] = 1;
      total += self(self, w, left - 1);
      on_path[static_cast<std::size_t>(w)] = 0;
    }
    return total;
  };
  const std::uint64_t n = dfs(dfs, v, r);
  return {n, n == 0 ? -std::numeric_limits<double>::infinity() : std::log(static_cast<double>(n))};
}

WalkLengthResult walk_length_scan(const std::vector<double>& r_grid, const std::vector<double>& z_grid,
                                  const CampaignSetup& setup, Point direction) {
  check_setup(setup);
  if (r_grid.empty()) throw InvalidArgument("empty r grid");
  for (const double r : r_grid) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("walk lengths r must be positive");
  }
  if (!is_finite(direction) || (direction.x == 0.0 && direction.y == 0.0)) {
    throw InvalidArgument("walk direction must be a nonzero vector");
  }
  const double r_max = *std::max_element(r_grid.begin(), r_grid.end());
  const double extent = r_max * std::max(std::abs(direction.x), std::abs(direction.y));
  const Window window = path_window(setup, extent);

  WalkLengthResult out;
  out.direction = direction;
  out.z_grid = z_grid;
  out.lengths.assign(setup.replicas, std::vector<double>(r_grid.size(), 0.0));
  std::vector<std::size_t> violations(setup.replicas, 0);
  std::vector<std::size_t> perturbed(setup.replicas, 0);
  parallel_for(setup.replicas, setup.threads, [&](std::size_t rep) {
    const PointSet points = sample_poisson(window, setup.intensity, replica_seeds(setup, rep).points);
    const Tessellation tess(points, VoronoiOptions{false});
    for (std::size_t j = 0; j < r_grid.size(); ++j) {
      const SegmentWalk walk = segment_walk({0.0, 0.0}, r_grid[j] * direction, tess.diagram());
      out.lengths[rep][j] = static_cast<double>(walk.path.vertices.size());
      if (!walk.path.self_avoiding) ++violations[rep];
      if (walk.perturbed) ++perturbed[rep];
    }
  });
  for (std::size_t rep = 0; rep < setup.replicas; ++rep) {
    out.self_avoidance_violations += violations[rep];
    out.perturbed += perturbed[rep];
  }
  out.walks = setup.replicas * r_grid.size();
  for (std::size_t j = 0; j < r_grid.size(); ++j) {
    std::vector<double> ratio;
    for (const auto& row : out.lengths) ratio.push_back(row[j] / r_grid[j]);
    WalkLengthRow row{r_grid[j], summarize(ratio), quantile_interval(ratio, 0.99), {}};
    for (const double z : z_grid) {
      const auto over = std::count_if(ratio.begin(), ratio.end(), [z](double x) { return x > z; });
      row.tail.push_back(static_cast<double>(over) / static_cast<double>(ratio.size()));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

MinAnimalResult min_animal_scan(const std::vector<int>& r_grid, double L, const CampaignSetup& setup,
                                Point direction) {
  check_setup(setup);
  if (r_grid.empty()) throw InvalidArgument("empty r grid");
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("box scale L must be positive");
  for (const int r : r_grid) {
    if (r < 1) throw InvalidArgument("path lengths r must be positive");
  }
  if (!is_finite(direction) || (direction.x == 0.0 && direction.y == 0.0)) {
    throw InvalidArgument("walk direction must be a nonzero vector");
  }
  const int r_max = *std::max_element(r_grid.begin(), r_grid.end());
  const int exact_max = std::min(r_max, kMaxExactPathEdges);
  const double extent = std::max(12.0, r_max * std::max(std::abs(direction.x), std::abs(direction.y)));
  const Window window = path_window(setup, extent);

  const std::size_t m = r_grid.size();
  // [replica][r index][g, G, walk, geodesic]
  std::vector<std::vector<std::array<double, 4>>> data(setup.replicas, std::vector<std::array<double, 4>>(m));
  parallel_for(setup.replicas, setup.threads, [&](std::size_t rep) {
    const ReplicaSeeds seeds = replica_seeds(setup, rep);
    const PointSet points = sample_poisson(window, setup.intensity, seeds.points);
    const Tessellation tess(points, VoronoiOptions{false});
    const DelaunayGraph& graph = tess.graph();
    const VertexId v0 = locate_tile({0.0, 0.0}, tess.diagram());
    const AnimalExtrema ex = path_animal_extrema(graph, v0, exact_max, L);
    std::optional<EdgeWeights> weights;
    for (std::size_t j = 0; j < m; ++j) {
      const int r = r_grid[j];
      auto& cell = data[rep][j];
      if (r <= kMaxExactPathEdges) {
        cell[0] = static_cast<double>(ex.g[static_cast<std::size_t>(r)]) / r;
        cell[1] = static_cast<double>(ex.G[static_cast<std::size_t>(r)]) / r;
        continue;
      }
      if (!weights) weights = assign_weights(graph, WeightDistribution::exponential(1.0), seeds.weights);
      const Point end = static_cast<double>(r) * direction;
      const SegmentWalk walk = segment_walk({0.0, 0.0}, end, tess.diagram());
      cell[2] = static_cast<double>(path_animal(walk.path, graph, L).size()) / r;
      const PassageResult geo = first_passage_time(graph, *weights, v0, locate_tile(end, tess.diagram()));
      cell[3] = static_cast<double>(path_animal(make_path(graph, geo.geodesic), graph, L).size()) / r;
    }
  });
  MinAnimalResult out;
  out.L = L;
  out.direction = direction;
  for (std::size_t j = 0; j < m; ++j) {
    MinAnimalRow row;
    row.r = r_grid[j];
    row.exact = r_grid[j] <= kMaxExactPathEdges;
    std::array<std::vector<double>, 4> cols;
    for (const auto& rep : data) {
      for (std::size_t k = 0; k < 4; ++k) cols[k].push_back(rep[j][k]);
    }
    if (row.exact) {
      row.g_ratio = summarize(cols[0]);
      row.G_ratio = summarize(cols[1]);
    } else {
      row.walk_ratio = summarize(cols[2]);
      row.geodesic_ratio = summarize(cols[3]);
    }
    out.rows.push_back(row);
  }
  return out;
}

CheapestPathResult cheapest_path_scan(const WeightDistribution& dist, const std::vector<int>& r_grid, double c,
                                      const CampaignSetup& setup) {
  check_setup(setup);
  if (r_grid.empty()) throw InvalidArgument("empty r grid");
  for (const int r : r_grid) {
    if (r < 1) throw InvalidArgument("path lengths r must be positive");
    if (r > kMaxExactPathEdges) throw BoundExceeded("cheapest-path scan is exact and limited to r <= 9");
  }
  if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidArgument("threshold constant c must be nonnegative");
  const Window window = path_window(setup, 12.0);
  CheapestPathResult out;
  out.c = c;
  out.times.assign(setup.replicas, std::vector<double>(r_grid.size(), 0.0));
  parallel_for(setup.replicas, setup.threads, [&](std::size_t rep) {
    const ReplicaSeeds seeds = replica_seeds(setup, rep);
    const PointSet points = sample_poisson(window, setup.intensity, seeds.points);
    const Tessellation tess(points, VoronoiOptions{false});
    const EdgeWeights w = assign_weights(tess.graph(), dist, seeds.weights);
    const VertexId v0 = locate_tile({0.0, 0.0}, tess.diagram());
    for (std::size_t j = 0; j < r_grid.size(); ++j) {
      out.times[rep][j] = cheapest_long_path(tess.graph(), w, v0, r_grid[j]);
    }
  });
  for (std::size_t j = 0; j < r_grid.size(); ++j) {
    const int r = r_grid[j];
    std::size_t below = 0;
    std::vector<double> ratio;
    for (const auto& row : out.times) {
      if (row[j] <= c * r) ++below;
      ratio.push_back(row[j] / r);
    }
    out.rows.push_back({r, summarize_proportion(below, out.times.size()), summarize(ratio)});
  }
  return out;
}

KappaResult kappa_scan(int r_max, const CampaignSetup& setup) {
  check_setup(setup);
  if (r_max < 1) throw InvalidArgument("r_max must be positive");
  if (r_max > kMaxCountedSteps) throw BoundExceeded("self-avoiding counting is limited to r <= 10");
  const Window window = path_window(setup, 12.0);
  const auto n = static_cast<std::size_t>(r_max);
  std::vector<std::vector<std::uint64_t>> counts(setup.replicas, std::vector<std::uint64_t>(n, 0));
  parallel_for(setup.replicas, setup.threads, [&](std::size_t rep) {
    const PointSet points = sample_poisson(window, setup.intensity, replica_seeds(setup, rep).points);
    const Tessellation tess(points, VoronoiOptions{false});
    const VertexId v0 = locate_tile({0.0, 0.0}, tess.diagram());
    for (int r = 1; r <= r_max; ++r) counts[rep][static_cast<std::size_t>(r - 1)] = count_self_avoiding(tess.graph(), v0, r).count;
  });
  std::vector<KappaRow> rows;
  for (int r = 1; r <= r_max; ++r) {
    std::vector<double> c, k, kr;
    for (const auto& row : counts) {
      const auto x = static_cast<double>(row[static_cast<std::size_t>(r - 1)]);
      c.push_back(x);
      k.push_back(std::log(x));
      kr.push_back(std::log(x) / r);
    }
    rows.push_back({r, summarize(c), summarize(k), summarize(kr)});
  }
  return {std::move(rows), std::move(counts)};
}

}  // namespace fppdt
