#include "fppdt/percolation.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <optional>
#include <queue>
#include <string>

#include "fppdt/parallel.hpp"
#include "fppdt/point_process.hpp"
#include "fppdt/predicates.hpp"
#include "fppdt/renorm.hpp"

namespace fppdt {

using predicates::segment_meets_rect;
using predicates::segments_intersect;

CrossingSpec CrossingSpec::standard(double R, Point anchor) {
  if (!(R > 0.0)) throw InvalidArgument("crossing scale R must be positive");
  return {{anchor, {anchor.x + 3.0 * R, anchor.y + R}}, false};
}

std::array<Point, 2> CrossingSpec::source_side() const {
  if (vertical) return {rect.lo, Point{rect.hi.x, rect.lo.y}};
  return {rect.lo, Point{rect.lo.x, rect.hi.y}};
}

std::array<Point, 2> CrossingSpec::target_side() const {
  if (vertical) return {Point{rect.lo.x, rect.hi.y}, rect.hi};
  return {Point{rect.hi.x, rect.lo.y}, rect.hi};
}

SegmentGraph voronoi_graph(const VoronoiDiagram& diagram) {
  SegmentGraph g;
  g.nodes.assign(diagram.vertices().begin(), diagram.vertices().end());
  g.links.reserve(diagram.dual_edge_count());
  for (std::size_t d = 0; d < diagram.dual_edge_count(); ++d) {
    const auto t = diagram.dual_endpoints(static_cast<std::int32_t>(d));
    g.links.push_back({t[0], t[1]});
  }
  return g;
}

SegmentGraph delaunay_graph(const DelaunayGraph& graph) {
  SegmentGraph g;
  g.nodes.assign(graph.vertices().points().begin(), graph.vertices().points().end());
  g.links.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) g.links.push_back({e.a, e.b});
  return g;
}

CrossingSolver::CrossingSolver(const SegmentGraph& graph, const CrossingSpec& spec)
    : node_count_(graph.nodes.size()), links_(graph.links) {
  if (!(spec.rect.width() > 0.0) || !(spec.rect.height() > 0.0)) {
    throw InvalidArgument("crossing rectangle is degenerate");
  }
  inside_.resize(node_count_);
  for (std::size_t v = 0; v < node_count_; ++v) inside_[v] = spec.rect.contains(graph.nodes[v]) ? 1 : 0;
  const auto src = spec.source_side();
  const auto tgt = spec.target_side();
  hits_source_.assign(links_.size(), 0);
  hits_target_.assign(links_.size(), 0);
  offsets_.assign(node_count_ + 1, 0);
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Point a = graph.nodes[static_cast<std::size_t>(links_[i][0])];
    const Point b = graph.nodes[static_cast<std::size_t>(links_[i][1])];
    hits_source_[i] = segments_intersect(a, b, src[0], src[1]) ? 1 : 0;
    hits_target_[i] = segments_intersect(a, b, tgt[0], tgt[1]) ? 1 : 0;
    if (hits_source_[i]) start_links_.push_back(static_cast<std::int32_t>(i));
    for (const auto v : links_[i]) {
      if (inside_[static_cast<std::size_t>(v)]) ++offsets_[static_cast<std::size_t>(v) + 1];
    }
  }
  for (std::size_t v = 0; v < node_count_; ++v) offsets_[v + 1] += offsets_[v];
  arcs_.resize(offsets_[node_count_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const auto a = links_[i][0];
    const auto b = links_[i][1];
    if (inside_[static_cast<std::size_t>(a)]) arcs_[fill[static_cast<std::size_t>(a)]++] = {static_cast<std::int32_t>(i), b};
    if (inside_[static_cast<std::size_t>(b)]) arcs_[fill[static_cast<std::size_t>(b)]++] = {static_cast<std::int32_t>(i), a};
  }
}

bool CrossingSolver::crosses(std::span<const char> open) const {
  if (open.size() != links_.size()) throw InvalidArgument("bond field does not match the graph");
  std::vector<char> seen(node_count_, 0);
  std::vector<std::int32_t> stack;
  for (const auto i : start_links_) {
    if (!open[static_cast<std::size_t>(i)]) continue;
    if (hits_target_[static_cast<std::size_t>(i)]) return true;
    for (const auto v : links_[static_cast<std::size_t>(i)]) {
      const auto vi = static_cast<std::size_t>(v);
      if (inside_[vi] && !seen[vi]) {
        seen[vi] = 1;
        stack.push_back(v);
      }
    }
  }
  while (!stack.empty()) {
    const auto x = static_cast<std::size_t>(stack.back());
    stack.pop_back();
    for (std::size_t k = offsets_[x]; k < offsets_[x + 1]; ++k) {
      const Arc& a = arcs_[k];
      if (!open[static_cast<std::size_t>(a.link)]) continue;
      if (hits_target_[static_cast<std::size_t>(a.link)]) return true;
      const auto yi = static_cast<std::size_t>(a.to);
      if (inside_[yi] && !seen[yi]) {
        seen[yi] = 1;
        stack.push_back(a.to);
      }
    }
  }
  return false;
}

double CrossingSolver::threshold(std::span<const double> u) const {
  if (u.size() != links_.size()) throw InvalidArgument("uniform field does not match the graph");
  constexpr double kNever = 2.0;
  double best = kNever;
  std::vector<double> label(node_count_, kNever);
  using Entry = std::pair<double, std::int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (const auto i : start_links_) {
    const double c = u[static_cast<std::size_t>(i)];
    if (hits_target_[static_cast<std::size_t>(i)]) best = std::min(best, c);
    for (const auto v : links_[static_cast<std::size_t>(i)]) {
      const auto vi = static_cast<std::size_t>(v);
      if (inside_[vi] && c < label[vi]) {
        label[vi] = c;
        heap.emplace(c, v);
      }
    }
  }
  while (!heap.empty()) {
    const auto [c, x] = heap.top();
    heap.pop();
    if (c >= best) break;
    const auto xi = static_cast<std::size_t>(x);
    if (c != label[xi]) continue;
    for (std::size_t k = offsets_[xi]; k < offsets_[xi + 1]; ++k) {
      const Arc& a = arcs_[k];
      const double nc = std::max(c, u[static_cast<std::size_t>(a.link)]);
      if (hits_target_[static_cast<std::size_t>(a.link)]) best = std::min(best, nc);
      const auto yi = static_cast<std::size_t>(a.to);
      if (inside_[yi] && nc < label[yi]) {
        label[yi] = nc;
        heap.emplace(nc, a.to);
      }
    }
  }
  return best;
}

std::vector<double> bond_uniforms(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> u(count);
  for (double& x : u) x = rng.uniform();
  return u;
}

BondConfiguration bonds_from_uniforms(std::span<const double> u, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("bond probability must lie in [0, 1]");
  std::vector<char> open(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) open[i] = u[i] < p ? 1 : 0;
  return BondConfiguration(std::move(open));
}

BondConfiguration open_bonds(const VoronoiDiagram& diagram, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("bond probability must lie in [0, 1]");
  return bonds_from_uniforms(bond_uniforms(diagram.dual_edge_count(), seed), p);
}

namespace {

std::span<const char> open_span(const BondConfiguration& config, std::vector<char>& storage) {
  storage.resize(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) storage[i] = config.open(static_cast<std::int32_t>(i)) ? 1 : 0;
  return storage;
}

}  // namespace

bool crossing_event(const BondConfiguration& config, const CrossingSpec& spec,
                    const VoronoiDiagram& diagram) {
  if (config.size() != diagram.dual_edge_count()) throw InvalidArgument("bond field does not match the diagram");
  const CrossingSolver solver(voronoi_graph(diagram), spec);
  std::vector<char> storage;
  return solver.crosses(open_span(config, storage));
}

Window crossing_window(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("crossing scale R must be positive");
  const double m = 0.5 * R;
  return Window({0.0, 0.0}, {3.0 * R + 2.0 * m, R + 2.0 * m}, m);
}

CrossingSpec crossing_spec(double R) {
  const double m = 0.5 * R;
  return CrossingSpec::standard(R, {m, m});
}

namespace {

// One replica's bond universe: solver plus the uniforms driving it.
struct BondReplica {
  CrossingSolver solver;
  std::vector<double> u;

  bool crosses(double p) const {
    std::vector<char> open(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) open[i] = u[i] < p ? 1 : 0;
    return solver.crosses(open);
  }
};

BondReplica make_replica(double R, const CampaignSetup& setup, std::size_t r, BondLattice lattice) {
  const ReplicaSeeds seeds = replica_seeds(setup, r);
  const PointSet points = sample_poisson(crossing_window(R), setup.intensity, seeds.points);
  const Tessellation tess(points, VoronoiOptions{false});
  SegmentGraph g = lattice == BondLattice::kVoronoi ? voronoi_graph(tess.diagram()) : delaunay_graph(tess.graph());
  std::vector<double> u = bond_uniforms(g.links.size(), seeds.bonds);
  return {CrossingSolver(g, crossing_spec(R)), std::move(u)};
}

std::vector<BondReplica> make_replicas(double R, const CampaignSetup& setup, BondLattice lattice) {
  std::vector<std::optional<BondReplica>> slots(setup.replicas);
  parallel_for(setup.replicas, setup.threads, [&](std::size_t r) { slots[r] = make_replica(R, setup, r, lattice); });
  std::vector<BondReplica> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

Summary eta_at(const std::vector<BondReplica>& reps, double p, unsigned threads) {
  std::vector<char> hit(reps.size());
  parallel_for(reps.size(), threads, [&](std::size_t r) { hit[r] = reps[r].crosses(p) ? 1 : 0; });
  std::size_t k = 0;
  for (const char h : hit) k += h != 0;
  return summarize_proportion(k, reps.size());
}

void check_probability_grid(const std::vector<double>& p_grid) {
  if (p_grid.empty()) throw InvalidArgument("p grid is empty");
  for (const double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("bond probability must lie in [0, 1]");
  }
}

}  // namespace

EtaCurve eta_curve(const std::vector<double>& p_grid, double R, const CampaignSetup& setup,
                   BondLattice lattice) {
  check_setup(setup);
  check_probability_grid(p_grid);
  std::vector<double> ps(p_grid);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  EtaCurve curve;
  curve.R = R;
  curve.lattice = lattice;
  curve.crossed.assign(setup.replicas, std::vector<char>(ps.size(), 0));
  curve.thresholds.assign(setup.replicas, 0.0);
  parallel_for(setup.replicas, setup.threads, [&](std::size_t r) {
    const BondReplica rep = make_replica(R, setup, r, lattice);
    for (std::size_t k = 0; k < ps.size(); ++k) curve.crossed[r][k] = rep.crosses(ps[k]) ? 1 : 0;
    curve.thresholds[r] = rep.solver.threshold(rep.u);
  });
  for (std::size_t k = 0; k < ps.size(); ++k) {
    std::size_t hits = 0;
    for (const auto& row : curve.crossed) hits += row[k] != 0;
    curve.points.push_back({ps[k], summarize_proportion(hits, setup.replicas)});
  }
  for (const auto& row : curve.crossed) {
    for (std::size_t k = 0; k + 1 < row.size(); ++k) {
      if (row[k] && !row[k + 1]) {
        ++curve.violations;
        break;
      }
    }
  }
  return curve;
}

EtaPoint estimate_eta(double p, double R, const CampaignSetup& setup, BondLattice lattice) {
  const EtaCurve c = eta_curve({p}, R, setup, lattice);
  return c.points.front();
}

ThresholdResult estimate_pc_star(const std::vector<double>& R_grid, double tol, const CampaignSetup& setup,
                                 BondLattice lattice) {
  if (setup.replicas == 0) throw InvalidArgument("threshold estimation needs replicas > 0");
  check_setup(setup);
  if (!(tol >= 0.01)) throw InvalidArgument("bisection tolerance must be >= 0.01");
  if (R_grid.empty()) throw InvalidArgument("R grid is empty");
  ThresholdResult res;
  res.lattice = lattice;
  res.tol = tol;
  for (const double R : R_grid) {
    const auto reps = make_replicas(R, setup, lattice);
    ThresholdEstimate est;
    est.R = R;
    est.eta_lo = eta_at(reps, 0.0, setup.threads);
    est.eta_hi = eta_at(reps, 1.0, setup.threads);
    if (est.eta_hi.mean < 0.5) throw NumericError("bisection bracket failure: eta(1) < 1/2");
    if (est.eta_lo.mean >= 0.5) throw NumericError("bisection bracket failure: eta(0) >= 1/2");
    while (est.hi - est.lo > tol) {
      const double mid = 0.5 * (est.lo + est.hi);
      const Summary eta = eta_at(reps, mid, setup.threads);
      if (eta.mean >= 0.5) {
        est.hi = mid;
        est.eta_hi = eta;
      } else {
        est.lo = mid;
        est.eta_lo = eta;
      }
      ++est.steps;
    }
    std::vector<double> beta(reps.size());
    parallel_for(reps.size(), setup.threads, [&](std::size_t r) { beta[r] = reps[r].solver.threshold(reps[r].u); });
    const QuantileEstimate med = quantile_interval(beta, 0.5);
    est.median = med.value;
    est.median_low = med.low;
    est.median_high = med.high;
    res.estimates.push_back(est);
  }
  return res;
}

namespace {

bool link_avoids(Point a, Point b, const Rect& inner) { return !segment_meets_rect(a, b, inner); }

}  // namespace

bool circuit_exists(const BondConfiguration& config, const Rect& inner, const Rect& outer,
                    const VoronoiDiagram& diagram) {
  if (!(outer.lo.x < inner.lo.x && outer.lo.y < inner.lo.y && inner.hi.x < outer.hi.x &&
        inner.hi.y < outer.hi.y)) {
    throw InvalidArgument("inner box must lie strictly inside the outer box");
  }
  if (config.size() != diagram.dual_edge_count()) throw InvalidArgument("bond field does not match the diagram");
  const Point c = inner.center();
  const std::size_t nv = diagram.vertices().size();

  // Open links inside the annulus, each with its signed crossing of the
  // ray {c + (s, 0) : s > 0}, oriented from endpoint 0 to endpoint 1.
  struct Arc {
    std::int32_t to;
    int weight;
  };
  std::vector<std::vector<Arc>> adj(nv);
  for (std::size_t d = 0; d < diagram.dual_edge_count(); ++d) {
    if (!config.open(static_cast<std::int32_t>(d))) continue;
    const auto t = diagram.dual_endpoints(static_cast<std::int32_t>(d));
    const Point a = diagram.vertex(t[0]);
    const Point b = diagram.vertex(t[1]);
    if (!outer.contains(a) || !outer.contains(b) || !link_avoids(a, b, inner)) continue;
    int w = 0;
    const bool a_up = a.y > c.y;
    const bool b_up = b.y > c.y;
    if (a_up != b_up) {
      // The link meets the line y = c.y; it counts when it does so right of c.
      const int o = predicates::orient2d(a, b, c);
      if (b_up && o > 0) w = 1;
      if (a_up && o < 0) w = -1;
    }
    adj[static_cast<std::size_t>(t[0])].push_back({t[1], w});
    adj[static_cast<std::size_t>(t[1])].push_back({t[0], -w});
  }
  constexpr std::int64_t kUnset = INT64_MIN;
  std::vector<std::int64_t> phi(nv, kUnset);
  std::vector<std::int32_t> stack;
  for (std::size_t s = 0; s < nv; ++s) {
    if (phi[s] != kUnset || adj[s].empty()) continue;
    phi[s] = 0;
    stack.assign(1, static_cast<std::int32_t>(s));
    while (!stack.empty()) {
      const auto x = static_cast<std::size_t>(stack.back());
      stack.pop_back();
      for (const Arc& a : adj[x]) {
        const auto y = static_cast<std::size_t>(a.to);
        if (phi[y] == kUnset) {
          phi[y] = phi[x] + a.weight;
          stack.push_back(a.to);
        } else if (phi[y] != phi[x] + a.weight) {
          return true;
        }
      }
    }
  }
  return false;
}

bool circuit_four_rectangles(const BondConfiguration& config, const Rect& inner, const Rect& outer,
                             const VoronoiDiagram& diagram) {
  if (!(outer.lo.x < inner.lo.x && outer.lo.y < inner.lo.y && inner.hi.x < outer.hi.x &&
        inner.hi.y < outer.hi.y)) {
    throw InvalidArgument("inner box must lie strictly inside the outer box");
  }
  const SegmentGraph g = voronoi_graph(diagram);
  std::vector<char> storage;
  const auto open = open_span(config, storage);
  const CrossingSpec parts[4] = {
      {{{outer.lo.x, inner.hi.y}, outer.hi}, false},
      {{outer.lo, {outer.hi.x, inner.lo.y}}, false},
      {{outer.lo, {inner.lo.x, outer.hi.y}}, true},
      {{{inner.hi.x, outer.lo.y}, outer.hi}, true},
  };
  for (const auto& spec : parts) {
    if (!CrossingSolver(g, spec).crosses(open)) return false;
  }
  return true;
}

GoodBoxVariant parse_good_box_variant(std::string_view name) {
  if (name == "Y") return GoodBoxVariant::kY;
  if (name == "Z") return GoodBoxVariant::kZ;
  if (name == "V") return GoodBoxVariant::kV;
  if (name == "W") return GoodBoxVariant::kW;
  throw InvalidArgument("unknown good-box variant '" + std::string(name) + "'");
}

std::vector<char> classify_good_boxes(GoodBoxVariant variant, const GoodBoxParams& params,
                                      const GoodBoxInputs& inputs) {
  if (!(params.L > 0.0)) throw InvalidArgument("box scale L must be positive");
  if (inputs.points == nullptr) throw InvalidArgument("good-box classification needs a point set");
  const BoxGrid grid(params.L, 0.5, params.first, params.last);
  std::vector<char> good(grid.size(), 0);
  if (inputs.points->empty()) return good;
  if (inputs.diagram == nullptr && (variant == GoodBoxVariant::kV || variant == GoodBoxVariant::kW)) {
    throw InvalidArgument("variants V and W need the Voronoi diagram");
  }
  if (variant == GoodBoxVariant::kV && inputs.bonds == nullptr) throw InvalidArgument("variant V needs a bond field");
  if (variant == GoodBoxVariant::kW && inputs.weights == nullptr) throw InvalidArgument("variant W needs weights");

  // Occupancy is evaluated on a grid padded by two rings so that every
  // neighbourhood lookup stays in range.
  const Site pad_first{params.first.x - 2, params.first.y - 2};
  const Site pad_last{params.last.x + 2, params.last.y + 2};
  const BoxGrid padded(params.L, 0.5, pad_first, pad_last);
  const BoxOccupancy occ = box_occupancy(padded, inputs.points->points());
  auto full = [&](Site z) { return occ.full[padded.index(z)] != 0; };

  BondConfiguration threshold;
  // V: boxes met by at least one closed dual edge.
  std::vector<char> blocked;
  if (variant == GoodBoxVariant::kV) {
    blocked.assign(padded.size(), 0);
    const VoronoiDiagram& dg = *inputs.diagram;
    if (inputs.bonds->size() != dg.dual_edge_count()) throw InvalidArgument("bond field does not match the diagram");
    for (std::size_t d = 0; d < dg.dual_edge_count(); ++d) {
      if (inputs.bonds->open(static_cast<std::int32_t>(d))) continue;
      const auto seg = dg.dual_segment(static_cast<std::int32_t>(d));
      const auto lo_x = static_cast<int>(std::floor(std::min(seg[0].x, seg[1].x) / params.L - 0.5)) - 1;
      const auto hi_x = static_cast<int>(std::ceil(std::max(seg[0].x, seg[1].x) / params.L + 0.5)) + 1;
      const auto lo_y = static_cast<int>(std::floor(std::min(seg[0].y, seg[1].y) / params.L - 0.5)) - 1;
      const auto hi_y = static_cast<int>(std::ceil(std::max(seg[0].y, seg[1].y) / params.L + 0.5)) + 1;
      for (int x = std::max(lo_x, pad_first.x); x <= std::min(hi_x, pad_last.x); ++x) {
        for (int y = std::max(lo_y, pad_first.y); y <= std::min(hi_y, pad_last.y); ++y) {
          if (segment_meets_rect(seg[0], seg[1], padded.box({x, y}))) blocked[padded.index({x, y})] = 1;
        }
      }
    }
  }
  if (variant == GoodBoxVariant::kW) threshold = threshold_indicator(*inputs.weights, *inputs.diagram, params.eps);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Site z = grid.site(i);
    bool ok = true;
    switch (variant) {
      case GoodBoxVariant::kZ:
        ok = full(z);
        break;
      case GoodBoxVariant::kY:
        for (int dx = -1; dx <= 1 && ok; ++dx) {
          for (int dy = -1; dy <= 1 && ok; ++dy) {
            if (dx != 0 || dy != 0) ok = full({z.x + dx, z.y + dy});
          }
        }
        break;
      case GoodBoxVariant::kV: {
        const double cap = 4.0 * params.L * params.L;
        for (int dx = -1; dx <= 1 && ok; ++dx) {
          for (int dy = -1; dy <= 1 && ok; ++dy) {
            const Site w{z.x + dx, z.y + dy};
            ok = full(w) && static_cast<double>(occ.count[padded.index(w)]) <= cap;
          }
        }
        if (!ok) break;
        for (int dx = -1; dx <= 1 && ok; ++dx) {
          for (int dy = -1; dy <= 1 && ok; ++dy) ok = !blocked[padded.index({z.x + dx, z.y + dy})];
        }
        break;
      }
      case GoodBoxVariant::kW:
        for (int dx = -2; dx <= 2 && ok; ++dx) {
          for (int dy = -2; dy <= 2 && ok; ++dy) {
            if (std::max(std::abs(dx), std::abs(dy)) == 2) ok = full({z.x + dx, z.y + dy});
          }
        }
        if (ok) ok = circuit_exists(threshold, grid.box(z, 0.5), grid.box(z, 1.5), *inputs.diagram);
        break;
    }
    good[i] = ok ? 1 : 0;
  }
  return good;
}

}  // namespace fppdt
