#include "fppdt_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fppdt/fpp.hpp"
#include "fppdt/fpp_campaigns.hpp"
#include "fppdt/io.hpp"
#include "fppdt/paths.hpp"
#include "fppdt/percolation.hpp"
#include "fppdt/point_process.hpp"
#include "fppdt/renorm.hpp"

namespace fppdt::cli {
namespace {

using nlohmann::json;

std::string num(double x) { return format_double(x); }
std::string num(std::int64_t x) { return std::to_string(x); }
std::string num(std::uint64_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

json to_json(const Summary& s) {
  return {{"count", s.count}, {"mean", s.mean}, {"variance", s.variance}, {"ci", {s.ci_low, s.ci_high}},
          {"min", s.min}, {"max", s.max}};
}

json to_json(const Correlation& c) { return {{"r", c.r}, {"ci", {c.ci_low, c.ci_high}}, {"count", c.count}}; }

json to_json(const QuantileEstimate& q) { return {{"value", q.value}, {"ci", {q.low, q.high}}}; }

json to_json(const std::vector<Site>& sites) {
  json out = json::array();
  for (const Site z : sites) out.push_back({z.x, z.y});
  return out;
}

std::vector<KeySpec> common(const std::string& replicas, std::vector<KeySpec> extra) {
  std::vector<KeySpec> keys{
      {"seed", "1", "master seed (64-bit)"},
      {"threads", "1", "worker threads (FPPDT_THREADS overrides)"},
      {"replicas", replicas, "independent replicas"},
      {"intensity", "1", "Poisson intensity"},
      {"side", "0", "window side (0: campaign default)"},
      {"freeze_points", "false", "reuse replica 0's points in every replica"},
  };
  keys.insert(keys.end(), extra.begin(), extra.end());
  return keys;
}

std::vector<KeySpec> single(std::vector<KeySpec> extra) {
  std::vector<KeySpec> keys{
      {"seed", "1", "master seed (64-bit)"},
      {"threads", "1", "worker threads (unused)"},
      {"intensity", "1", "Poisson intensity"},
  };
  keys.insert(keys.end(), extra.begin(), extra.end());
  return keys;
}

std::vector<std::int64_t> positive_ints(const Params& p, const std::string& key) {
  auto v = p.integers(key);
  for (const auto x : v) {
    if (x < 1) throw ConfigError("key '" + key + "' needs positive integers");
  }
  return v;
}

std::vector<int> small_ints(const Params& p, const std::string& key) {
  std::vector<int> out;
  for (const auto x : positive_ints(p, key)) {
    if (x > 1000000) throw ConfigError("key '" + key + "' has an out-of-range value");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

Point point_key(const Params& p, const std::string& key) {
  const auto v = p.reals(key);
  if (v.size() != 2) throw ConfigError("key '" + key + "' needs two numbers 'x,y'");
  return {v[0], v[1]};
}

WeightDistribution dist_key(const Params& p, const std::string& key = "dist") {
  return WeightDistribution::parse(p.text(key));
}

const std::string& mode_key(const Params& p, std::initializer_list<const char*> modes) {
  const std::string& m = p.text("mode");
  for (const char* allowed : modes) {
    if (m == allowed) return m;
  }
  std::string list;
  for (const char* allowed : modes) list += std::string(list.empty() ? "" : ", ") + allowed;
  throw ConfigError("mode must be one of: " + list);
}

BondLattice lattice_key(const std::string& name) {
  if (name == "voronoi") return BondLattice::kVoronoi;
  if (name == "delaunay") return BondLattice::kDelaunay;
  throw ConfigError("lattice must be voronoi or delaunay");
}

const char* lattice_name(BondLattice l) { return l == BondLattice::kVoronoi ? "voronoi" : "delaunay"; }

std::string hex64(std::uint64_t x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

json window_json(const Window& w) {
  return {{"lo", {w.lo().x, w.lo().y}}, {"hi", {w.hi().x, w.hi().y}}, {"margin", w.margin()}};
}

PointSet load_or_sample(const Params& p, double default_side) {
  const std::string& input = p.text("input");
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw ConfigError("cannot read point file '" + input + "'");
    return read_points(in);
  }
  double side = p.real("side");
  if (side == 0.0) side = default_side;
  if (!(side > 0.0) || !std::isfinite(side)) throw ConfigError("side must be positive");
  return sample_poisson(Window::square(side), p.real("intensity"), derive_seed(p.unsigned_integer("seed"), 0, "points"));
}

// ---- gen ------------------------------------------------------------------

CommandOutput run_gen(const Params& p) {
  const double side = p.real("side");
  if (!(side > 0.0) || !std::isfinite(side)) throw ConfigError("side must be positive");
  const double margin = p.text("margin") == "auto" ? side / 8.0 : p.real("margin");
  const Window window({0.0, 0.0}, {side, side}, margin);
  const std::uint64_t seed = p.unsigned_integer("seed");
  const std::string& process = p.text("process");
  CommandOutput out;
  out.summary["process"] = process;
  PointSet points = PointSet::trusted({}, window);
  if (process == "poisson") {
    points = sample_poisson(window, p.real("intensity"), derive_seed(seed, 0, "points"));
  } else if (process == "uniform") {
    const auto count = p.integer("count");
    if (count < 1) throw ConfigError("uniform process needs count >= 1");
    points = sample_uniform(window, static_cast<std::size_t>(count), derive_seed(seed, 0, "points"));
  } else if (process == "truncated") {
    const PointSet base = sample_poisson(window, p.real("intensity"), derive_seed(seed, 0, "points"));
    auto t = truncated_process_detailed(base, p.integer("n"), p.real("delta"), derive_seed(seed, 0, "truncation"));
    out.summary["boxes_filled"] = t.boxes_filled;
    out.summary["boxes_thinned"] = t.boxes_thinned;
    out.summary["box_cap"] = t.cap;
    out.summary["box_side"] = t.box_side;
    out.summary["source_points"] = base.size();
    points = std::move(t.points);
  } else {
    throw ConfigError("process must be poisson, uniform or truncated");
  }
  out.summary["count"] = points.size();
  out.summary["window"] = window_json(window);
  out.table.header = {"index", "x", "y"};
  for (std::size_t i = 0; i < points.size(); ++i) out.table.rows.push_back({num(i), num(points[i].x), num(points[i].y)});
  std::ostringstream file;
  write_points(file, points);
  out.files.emplace_back("points.txt", file.str());
  return out;
}

// ---- triangulate ---------------------------------------------------------------

CommandOutput run_triangulate(const Params& p) {
  const PointSet points = load_or_sample(p, 32.0);
  const DelaunayGraph graph = build_delaunay(points);
  CommandOutput out;
  std::size_t hull = 0;
  out.table.header = {"a", "b", "length"};
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const Edge ed = graph.edge(static_cast<EdgeId>(e));
    if (graph.is_hull_edge(static_cast<EdgeId>(e))) ++hull;
    out.table.rows.push_back({num(ed.a), num(ed.b), num(distance(graph.point(ed.a), graph.point(ed.b)))});
  }
  const auto v = static_cast<std::int64_t>(graph.vertex_count());
  const auto e = static_cast<std::int64_t>(graph.edge_count());
  const auto t = static_cast<std::int64_t>(graph.triangle_count());
  out.summary = {{"vertices", v}, {"edges", e}, {"triangles", t}, {"hull_edges", hull},
                 {"euler_characteristic", v - e + t + 1}, {"structure_hash", hex64(graph.structure_hash())},
                 {"window", window_json(points.window())}};
  std::ostringstream gf;
  write_graph(gf, graph);
  out.files.emplace_back("graph.txt", gf.str());
  if (!p.text("dist").empty()) {
    const auto dist = dist_key(p);
    const EdgeWeights w = assign_weights(graph, dist, derive_seed(p.unsigned_integer("seed"), 0, "weights"));
    std::ostringstream wf;
    write_weights(wf, graph, w);
    out.files.emplace_back("weights.txt", wf.str());
    out.summary["distribution"] = dist.to_string();
  }
  return out;
}

// ---- fpp ------------------------------------------------------------------------

CommandOutput run_fpp(const Params& p) {
  const auto dist = dist_key(p);
  const PointSet points = load_or_sample(p, 64.0);
  const Window& w = points.window();
  const double mid = 0.5 * (w.lo().y + w.hi().y);
  const Point x = p.text("from") == "auto" ? Point{w.lo().x + w.margin(), mid} : point_key(p, "from");
  const Point y = p.text("to") == "auto" ? Point{w.hi().x - w.margin(), mid} : point_key(p, "to");
  const double horizon = p.real("horizon");
  const Tessellation tess(points, VoronoiOptions{false});
  const EdgeWeights weights = assign_weights(tess.graph(), dist, derive_seed(p.unsigned_integer("seed"), 0, "weights"));
  const PassageResult res = point_passage_time(x, y, tess.diagram(), weights);
  const VertexId u = res.geodesic.front();
  const VertexId v = res.geodesic.back();
  CommandOutput out;
  out.table.header = {"step", "vertex", "x", "y", "time"};
  double t = 0.0;
  for (std::size_t i = 0; i < res.geodesic.size(); ++i) {
    if (i > 0) t += weights[*tess.graph().edge_index(res.geodesic[i - 1], res.geodesic[i])];
    const Point q = tess.graph().point(res.geodesic[i]);
    out.table.rows.push_back({num(i), num(res.geodesic[i]), num(q.x), num(q.y), num(t)});
  }
  out.summary = {{"distribution", dist.to_string()}, {"from", {x.x, x.y}}, {"to", {y.x, y.y}},
                 {"from_vertex", u}, {"to_vertex", v}, {"time", res.time}, {"geodesic", res.geodesic},
                 {"geodesic_edges", res.geodesic.size() - 1},
                 {"tie", u != v && has_geodesic_tie(tess.graph(), weights, u, v)}};
  if (horizon >= 0.0) {
    const ReachedSet r = reached_set(tess.graph(), weights, u, horizon);
    out.summary["horizon"] = horizon;
    out.summary["reached"] = r.vertices.size();
  }
  return out;
}

// ---- mu / fluct ------------------------------------------------------------------

void passage_rows(CommandOutput& out, const PassageCampaign& data, const CampaignSetup& setup) {
  out.table.header = {"n", "replica", "T", "seed"};
  for (const auto& s : data.samples) {
    out.table.rows.push_back({num(s.n), num(s.replica), num(s.time), num(replica_seeds(setup, s.replica).points)});
  }
  json cells = json::array();
  for (const auto& c : data.cells) cells.push_back({{"n", c.n}, {"time", to_json(c.time)}, {"ratio", to_json(c.ratio)}});
  out.summary["cells"] = cells;
  out.summary["window"] = {{"side", data.window.side}, {"margin", data.window.margin}};
}

CommandOutput run_mu(const Params& p) {
  const auto setup = setup_from(p);
  const auto dist = dist_key(p);
  const auto res = estimate_time_constant(dist, positive_ints(p, "n"), setup);
  CommandOutput out;
  passage_rows(out, res.data, setup);
  out.summary["distribution"] = dist.to_string();
  out.summary["mu_hat"] = res.mu_hat;
  out.summary["mu"] = to_json(res.mu);
  return out;
}

CommandOutput run_fluct(const Params& p) {
  const auto setup = setup_from(p);
  const auto dist = dist_key(p);
  const std::string& mode = mode_key(p, {"variance", "concentration", "subadditivity", "uniqueness"});
  const auto n_grid = positive_ints(p, "n");
  CommandOutput out;
  out.summary["mode"] = mode;
  out.summary["distribution"] = dist.to_string();
  if (mode == "variance") {
    const auto res = variance_scaling(dist, n_grid, setup);
    passage_rows(out, res.data, setup);
    out.summary["fit"] = {{"slope", res.fit.slope}, {"slope_se", res.fit.slope_se}, {"intercept", res.fit.intercept}};
  } else if (mode == "concentration") {
    const auto res = concentration_profile(dist, n_grid.back(), p.real("kappa"), p.reals("r"), setup);
    out.table.header = {"r", "threshold", "exceed", "frequency", "bound_nu", "bound_alt"};
    for (const auto& row : res.rows) {
      out.table.rows.push_back({num(row.r), num(row.threshold), num(row.exceed), num(row.frequency),
                                num(row.bound_nu), num(row.bound_alt)});
    }
    out.summary["n"] = n_grid.back();
    out.summary["kappa"] = res.kappa;
    out.summary["nu"] = res.nu;
    out.summary["nu_alt"] = res.nu_alt;
    out.summary["time"] = to_json(res.time);
  } else if (mode == "subadditivity") {
    const auto res = subadditivity_check(dist, n_grid, setup);
    passage_rows(out, res.data, setup);
    json doubling = json::array();
    for (const auto& d : res.doubling) doubling.push_back({{"n", d.n}, {"gap", to_json(d.doubling_gap)}});
    json excess = json::array();
    for (const auto& c : res.excess) excess.push_back({{"n", c.n}, {"excess", to_json(c.ratio)}});
    out.summary["mu_hat"] = res.mu_hat;
    out.summary["doubling"] = doubling;
    out.summary["excess"] = excess;
  } else {
    const auto res = geodesic_uniqueness_probe(dist, n_grid.back(), setup);
    out.table.header = {"n", "replica", "tie"};
    for (std::size_t r = 0; r < res.tie.size(); ++r) out.table.rows.push_back({num(res.n), num(r), num(int{res.tie[r]})});
    out.summary["n"] = res.n;
    out.summary["tie_frequency"] = to_json(res.frequency);
  }
  return out;
}

// ---- shape ----------------------------------------------------------------------

CommandOutput run_shape(const Params& p) {
  const auto setup = setup_from(p);
  const auto dist = dist_key(p);
  const auto t_grid = p.reals("t");
  const double kappa = p.real("kappa");
  const auto rays = p.integer("rays");
  if (rays < 4 || rays % 4 != 0) throw ConfigError("rays must be a positive multiple of 4");
  double mu_hat = 0.0;
  CommandOutput out;
  if (p.text("mu_hat") == "auto") {
    // Pilot estimate on an independent stream.
    CampaignSetup pilot = setup;
    pilot.seed = derive_seed(setup.seed, 0, "pilot");
    pilot.side = 0.0;
    pilot.replicas = std::max<std::size_t>(setup.replicas, 10);
    mu_hat = estimate_time_constant(dist, {64}, pilot).mu_hat;
    out.summary["mu_hat_source"] = "pilot";
  } else {
    mu_hat = p.real("mu_hat");
    out.summary["mu_hat_source"] = "config";
  }
  const auto res = shape_deviation(dist, t_grid, kappa, mu_hat, setup, static_cast<std::size_t>(rays));
  out.table.header = {"t", "replica", "reached", "in_band", "min_radius", "max_radius"};
  for (const auto& s : res.samples) {
    out.table.rows.push_back({num(s.t), num(s.replica), num(s.reached), num(s.in_band), num(s.min_radius),
                              num(s.max_radius)});
  }
  json cells = json::array();
  for (const auto& c : res.cells) {
    cells.push_back({{"t", c.t}, {"lower", c.lower}, {"upper", c.upper}, {"in_band", to_json(c.in_band)}});
  }
  out.summary["distribution"] = dist.to_string();
  out.summary["mu_hat"] = res.mu_hat;
  out.summary["kappa"] = res.kappa;
  out.summary["rays"] = res.rays;
  out.summary["side"] = res.side;
  out.summary["cells"] = cells;
  return out;
}

// ---- perc / pcstar ------------------------------------------------------------

CommandOutput run_perc(const Params& p) {
  const auto setup = setup_from(p);
  const auto p_grid = p.reals("p");
  for (const double q : p_grid) {
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("bond probabilities must lie in [0, 1]");
  }
  const double R = p.real("R");
  const BondLattice lattice = lattice_key(p.text("lattice"));
  const auto curve = eta_curve(p_grid, R, setup, lattice);
  CommandOutput out;
  out.table.header = {"p", "R", "replica", "crossed", "seed"};
  for (std::size_t j = 0; j < curve.points.size(); ++j) {
    for (std::size_t r = 0; r < curve.crossed.size(); ++r) {
      out.table.rows.push_back({num(curve.points[j].p), num(R), num(r), num(int{curve.crossed[r][j]}),
                                num(replica_seeds(setup, r).bonds)});
    }
  }
  json pts = json::array();
  for (const auto& e : curve.points) pts.push_back({{"p", e.p}, {"eta", to_json(e.eta)}});
  const QuantileEstimate med = quantile_interval(curve.thresholds, 0.5);
  out.summary = {{"R", R}, {"lattice", lattice_name(lattice)}, {"eta", pts},
                 {"monotonicity_violations", curve.violations}, {"threshold_median", to_json(med)}};
  return out;
}

CommandOutput run_pcstar(const Params& p) {
  const auto setup = setup_from(p);
  const auto R_grid = p.reals("R");
  const double tol = p.real("tol");
  const std::string& which = p.text("lattice");
  std::vector<BondLattice> lattices;
  if (which == "both") {
    lattices = {BondLattice::kVoronoi, BondLattice::kDelaunay};
  } else {
    lattices = {lattice_key(which)};
  }
  CommandOutput out;
  out.table.header = {"lattice", "R", "lo", "hi", "midpoint", "eta_lo", "eta_hi", "steps", "median", "median_low",
                      "median_high"};
  json results = json::array();
  std::vector<ThresholdResult> all;
  for (const BondLattice l : lattices) {
    all.push_back(estimate_pc_star(R_grid, tol, setup, l));
    for (const auto& e : all.back().estimates) {
      out.table.rows.push_back({lattice_name(l), num(e.R), num(e.lo), num(e.hi), num(e.midpoint()),
                                num(e.eta_lo.mean), num(e.eta_hi.mean), num(e.steps), num(e.median),
                                num(e.median_low), num(e.median_high)});
      results.push_back({{"lattice", lattice_name(l)}, {"R", e.R}, {"bracket", {e.lo, e.hi}},
                         {"midpoint", e.midpoint()}, {"eta_lo", to_json(e.eta_lo)}, {"eta_hi", to_json(e.eta_hi)},
                         {"steps", e.steps}, {"median", to_json(QuantileEstimate{e.median, e.median_low, e.median_high})}});
    }
  }
  out.summary = {{"R", R_grid}, {"tol", tol}, {"estimates", results}};
  if (all.size() == 2) {
    json duality = json::array();
    for (std::size_t i = 0; i < R_grid.size(); ++i) {
      const auto& v = all[0].estimates[i];
      const auto& d = all[1].estimates[i];
      duality.push_back({{"R", v.R}, {"sum_midpoints", v.midpoint() + d.midpoint()},
                         {"sum_medians", v.median + d.median}});
    }
    out.summary["duality"] = duality;
  }
  return out;
}

// ---- renorm ---------------------------------------------------------------------

CommandOutput run_renorm(const Params& p) {
  const auto setup = setup_from(p);
  const std::string& mode = mode_key(p, {"goodbox", "separation", "density"});
  CommandOutput out;
  out.summary["mode"] = mode;
  if (mode == "goodbox") {
    GoodBoxProbeParams gp;
    gp.variant = parse_good_box_variant(p.text("variant"));
    gp.L_grid = p.reals("L");
    const auto grid = p.integer("grid");
    if (grid < 1 || grid > 4096) throw ConfigError("grid must lie in 1..4096");
    gp.grid = static_cast<int>(grid);
    if (p.text("dependence") == "auto") {
      const int by_variant[] = {3, 1, 3, 5};  // Y, Z, V, W
      gp.dependence = by_variant[static_cast<int>(gp.variant)];
    } else {
      const auto d = p.integer("dependence");
      if (d < 1 || d > 4096) throw ConfigError("dependence must lie in 1..4096");
      gp.dependence = static_cast<int>(d);
    }
    gp.p = p.real("p");
    gp.weights = dist_key(p);
    gp.eps = p.real("eps");
    const auto res = good_box_density_probe(gp, setup);
    out.table.header = {"L", "replica", "good_fraction"};
    json rows = json::array();
    for (std::size_t j = 0; j < res.rows.size(); ++j) {
      for (std::size_t r = 0; r < res.fractions[j].size(); ++r) {
        out.table.rows.push_back({num(res.rows[j].L), num(r), num(res.fractions[j][r])});
      }
      rows.push_back({{"L", res.rows[j].L}, {"good_fraction", to_json(res.rows[j].good_fraction)},
                      {"correlation", to_json(res.rows[j].separated)}});
    }
    out.summary["variant"] = p.text("variant");
    out.summary["dependence"] = gp.dependence;
    out.summary["grid"] = gp.grid;
    out.summary["rows"] = rows;
  } else if (mode == "separation") {
    SeparationParams sp;
    sp.L = p.real("circuit_L");
    const auto extent = p.integer("max_extent");
    if (extent < 1 || extent > 64) throw ConfigError("max_extent must lie in 1..64");
    sp.max_extent = static_cast<int>(extent);
    const auto res = separation_campaign(sp, setup);
    out.table.header = {"replica", "corner_x", "corner_y", "width", "height", "points", "full", "separated"};
    for (const auto& i : res.instances) {
      out.table.rows.push_back({num(i.replica), num(i.corner.x), num(i.corner.y), num(i.width), num(i.height),
                                num(i.points), num(int{i.full}), num(int{i.separated})});
    }
    out.summary["circuit_L"] = sp.L;
    out.summary["checked"] = res.checked;
    out.summary["passed"] = res.passed;
    out.summary["precondition_failures"] = res.instances.size() - res.checked;
  } else {
    const auto g = p.integer("density_grid");
    if (g < 1 || g > kMaxDensityGrid || g % 2 == 0) throw ConfigError("density_grid must be odd and at most 7");
    const auto s = p.integer("s");
    const auto k_grid = small_ints(p, "k");
    const double rho = p.real("rho");
    if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
    const int h = static_cast<int>(g / 2);
    std::vector<std::vector<DensityResult>> res(setup.replicas, std::vector<DensityResult>(k_grid.size()));
    std::vector<SiteField> fields;
    for (std::size_t r = 0; r < setup.replicas; ++r) {
      Rng rng(derive_seed(setup.seed, r, "field"));
      std::vector<double> v(static_cast<std::size_t>(g * g));
      for (double& x : v) x = rng.uniform() < rho ? 1.0 : 0.0;
      fields.emplace_back(Site{-h, -h}, Site{h, h}, std::move(v));
    }
    for (std::size_t r = 0; r < setup.replicas; ++r) {
      for (std::size_t j = 0; j < k_grid.size(); ++j) res[r][j] = open_density(fields[r], static_cast<int>(s), k_grid[j]);
    }
    out.table.header = {"replica", "k", "m"};
    std::size_t violations = 0;
    json rows = json::array();
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      std::vector<double> m;
      for (std::size_t r = 0; r < setup.replicas; ++r) {
        out.table.rows.push_back({num(r), num(k_grid[j]), num(res[r][j].value)});
        m.push_back(static_cast<double>(res[r][j].value));
      }
      rows.push_back({{"k", k_grid[j]}, {"m", to_json(summarize(m))}, {"witness_replica_0", to_json(res[0][j].witness)}});
    }
    // m_s^1 <= (2k - 1)^2 m_s^k, checked where k = 1 is on the grid.
    const auto one = std::find(k_grid.begin(), k_grid.end(), 1);
    if (one != k_grid.end()) {
      const std::size_t j1 = static_cast<std::size_t>(one - k_grid.begin());
      for (std::size_t r = 0; r < setup.replicas; ++r) {
        for (std::size_t j = 0; j < k_grid.size(); ++j) {
          const auto c = static_cast<std::size_t>((2 * k_grid[j] - 1) * (2 * k_grid[j] - 1));
          if (res[r][j1].value > c * res[r][j].value) ++violations;
        }
      }
      out.summary["packing_violations"] = violations;
    }
    out.summary["s"] = s;
    out.summary["rho"] = rho;
    out.summary["rows"] = rows;
  }
  return out;
}

// ---- animals ----------------------------------------------------------------------

CommandOutput run_animals(const Params& p) {
  const auto setup = setup_from(p);
  const std::string& mode = mode_key(p, {"greedy", "paths"});
  CommandOutput out;
  out.summary["mode"] = mode;
  if (mode == "greedy") {
    const auto dist = SiteDistribution::parse(p.text("site_dist"));
    const auto s_grid = small_ints(p, "s");
    const auto res = animal_growth_scan(dist, s_grid, setup);
    out.table.header = {"replica", "s", "M_s", "ratio"};
    for (std::size_t r = 0; r < res.values.size(); ++r) {
      for (std::size_t j = 0; j < s_grid.size(); ++j) {
        out.table.rows.push_back({num(r), num(s_grid[j]), num(res.values[r][j]), num(res.values[r][j] / s_grid[j])});
      }
    }
    json rows = json::array();
    for (const auto& row : res.rows) rows.push_back({{"s", row.s}, {"ratio", to_json(row.ratio)}, {"q99", row.q99}});
    out.summary["site_distribution"] = dist.to_string();
    out.summary["rows"] = rows;
    out.summary["max_ratio_stabilizes"] = res.stabilizes;
  } else {
    const auto r_grid = small_ints(p, "r");
    const double L = p.real("L");
    const Point dir = point_key(p, "direction");
    const auto res = min_animal_scan(r_grid, L, setup, dir);
    out.table.header = {"r", "kind", "lower_mean", "upper_mean", "lower_min", "upper_max"};
    json rows = json::array();
    for (const auto& row : res.rows) {
      if (row.exact) {
        out.table.rows.push_back({num(row.r), "exact", num(row.g_ratio.mean), num(row.G_ratio.mean),
                                  num(row.g_ratio.min), num(row.G_ratio.max)});
        rows.push_back({{"r", row.r}, {"kind", "exact"}, {"g_over_r", to_json(row.g_ratio)},
                        {"G_over_r", to_json(row.G_ratio)}});
      } else {
        out.table.rows.push_back({num(row.r), "sampled", num(row.walk_ratio.mean), num(row.geodesic_ratio.mean),
                                  num(row.walk_ratio.min), num(row.geodesic_ratio.max)});
        rows.push_back({{"r", row.r}, {"kind", "sampled (not an extremum)"},
                        {"segment_walk_over_r", to_json(row.walk_ratio)},
                        {"geodesic_over_r", to_json(row.geodesic_ratio)}});
      }
    }
    out.summary["L"] = L;
    out.summary["direction"] = {dir.x, dir.y};
    out.summary["rows"] = rows;
  }
  return out;
}

// ---- paths ----------------------------------------------------------------------

CommandOutput run_paths(const Params& p) {
  const auto setup = setup_from(p);
  const std::string& mode = mode_key(p, {"walk", "cheapest"});
  CommandOutput out;
  out.summary["mode"] = mode;
  const bool auto_r = p.text("r") == "auto";
  if (mode == "walk") {
    const auto r_grid = auto_r ? std::vector<double>{8, 16, 32, 64} : p.reals("r");
    const auto z_grid = p.reals("z");
    const Point dir = point_key(p, "direction");
    const auto res = walk_length_scan(r_grid, z_grid, setup, dir);
    out.table.header = {"r", "replica", "length", "ratio"};
    for (std::size_t j = 0; j < r_grid.size(); ++j) {
      for (std::size_t r = 0; r < res.lengths.size(); ++r) {
        out.table.rows.push_back({num(r_grid[j]), num(r), num(res.lengths[r][j]), num(res.lengths[r][j] / r_grid[j])});
      }
    }
    json rows = json::array();
    for (const auto& row : res.rows) {
      rows.push_back({{"r", row.r}, {"ratio", to_json(row.ratio)}, {"q99", to_json(row.q99)}, {"tail", row.tail}});
    }
    out.summary["direction"] = {dir.x, dir.y};
    out.summary["z"] = z_grid;
    out.summary["rows"] = rows;
    out.summary["walks"] = res.walks;
    out.summary["self_avoidance_violations"] = res.self_avoidance_violations;
    out.summary["perturbed_queries"] = res.perturbed;
    out.summary["tie_rule"] = {{"offset", kWalkOffset}, {"direction", {1.0, kGoldenRatio}}};
  } else {
    const auto dist = dist_key(p);
    const auto r_grid = auto_r ? std::vector<int>{4, 5, 6, 7, 8} : small_ints(p, "r");
    const double c = p.real("c");
    const auto res = cheapest_path_scan(dist, r_grid, c, setup);
    out.table.header = {"r", "replica", "t_r"};
    for (std::size_t j = 0; j < r_grid.size(); ++j) {
      for (std::size_t r = 0; r < res.times.size(); ++r) {
        out.table.rows.push_back({num(r_grid[j]), num(r), num(res.times[r][j])});
      }
    }
    json rows = json::array();
    bool nonincreasing = true;
    for (std::size_t j = 0; j < res.rows.size(); ++j) {
      rows.push_back({{"r", res.rows[j].r}, {"below", to_json(res.rows[j].below)}, {"t_over_r", to_json(res.rows[j].ratio)}});
      if (j > 0 && res.rows[j].below.mean > res.rows[j - 1].below.mean) nonincreasing = false;
    }
    out.summary["distribution"] = dist.to_string();
    out.summary["c"] = c;
    out.summary["rows"] = rows;
    out.summary["below_frequency_nonincreasing"] = nonincreasing;
  }
  return out;
}

// ---- kappa / truncgap --------------------------------------------------------------

CommandOutput run_kappa(const Params& p) {
  const auto setup = setup_from(p);
  const auto r_max = p.integer("r_max");
  if (r_max < 1 || r_max > kMaxCountedSteps) throw ConfigError("r_max must lie in 1..10");
  const auto res = kappa_scan(static_cast<int>(r_max), setup);
  CommandOutput out;
  out.table.header = {"replica", "r", "N_r", "kappa_r"};
  for (std::size_t rep = 0; rep < res.counts.size(); ++rep) {
    for (std::size_t j = 0; j < res.counts[rep].size(); ++j) {
      const auto n = res.counts[rep][j];
      out.table.rows.push_back({num(rep), num(j + 1), num(n), num(std::log(static_cast<double>(n)))});
    }
  }
  json rows = json::array();
  for (const auto& row : res.rows) {
    rows.push_back({{"r", row.r}, {"N_r", to_json(row.count)}, {"kappa_r", to_json(row.kappa)},
                    {"kappa_r_over_r", to_json(row.kappa_per_step)}});
  }
  out.summary["rows"] = rows;
  return out;
}

CommandOutput run_truncgap(const Params& p) {
  const auto setup = setup_from(p);
  const auto dist = dist_key(p);
  const auto res = truncation_gap(dist, positive_ints(p, "n"), p.real("a"), p.real("delta"), setup);
  CommandOutput out;
  out.table.header = {"n", "replica", "T", "T_truncated", "gap", "boxes_filled", "boxes_thinned"};
  for (const auto& s : res.samples) {
    out.table.rows.push_back({num(s.n), num(s.replica), num(s.time), num(s.truncated_time),
                              num(s.time - s.truncated_time), num(s.boxes_filled), num(s.boxes_thinned)});
  }
  json cells = json::array();
  for (const auto& c : res.cells) {
    cells.push_back({{"n", c.n}, {"abs_gap", to_json(c.abs_gap)}, {"square_gap", to_json(c.square_gap)}});
  }
  out.summary = {{"distribution", dist.to_string()}, {"a", res.a}, {"delta", res.delta}, {"cells", cells}};
  return out;
}

std::vector<Command> build_table() {
  const KeySpec dist{"dist", "exponential(1)", "edge weight law: deterministic(c), bernoulliAtom(p0,v), exponential(rate), uniform(a,b)"};
  std::vector<Command> t;
  t.push_back({"gen", "sample a point set and write it as a point file",
               single({{"side", "32", "window side"},
                       {"margin", "auto", "window margin (auto: side/8)"},
                       {"process", "poisson", "poisson, uniform or truncated"},
                       {"count", "0", "number of points for the uniform process"},
                       {"n", "64", "scale n of the truncated process"},
                       {"delta", "0.07142857142857142", "box exponent of the truncated process (default 1/14)"}}),
               false, run_gen});
  t.push_back({"triangulate", "Delaunay triangulation with graph and optional weight export",
               single({{"side", "0", "window side when sampling (0: 32)"},
                       {"input", "", "point file (empty: sample Poisson points)"},
                       {"dist", "", "edge weight law (empty: no weight file)"}}),
               false, run_triangulate});
  t.push_back({"fpp", "passage time and geodesic between two points",
               single({{"side", "0", "window side when sampling (0: 64)"},
                       {"input", "", "point file (empty: sample Poisson points)"},
                       dist,
                       {"from", "auto", "start point x,y (auto: left margin, mid height)"},
                       {"to", "auto", "end point x,y (auto: right margin, mid height)"},
                       {"horizon", "-1", "also report |B(t)| for this t (negative: skip)"}}),
               false, run_fpp});
  t.push_back({"mu", "time constant estimate from T(0, n) / n",
               common("20", {dist, {"n", "8,16,32,64", "distances"}}), true, run_mu});
  t.push_back({"fluct", "fluctuations: variance, concentration, subadditivity, uniqueness",
               common("100", {dist,
                              {"mode", "variance", "variance, concentration, subadditivity or uniqueness"},
                              {"n", "8,16,32,64", "distances (concentration and uniqueness use the last)"},
                              {"kappa", "0.75", "deviation exponent"},
                              {"r", "0.5,1,2,4", "tail levels"}}),
               true, run_fluct});
  t.push_back({"shape", "reached sets against the limit-shape band",
               common("10", {dist,
                             {"t", "8,16", "times"},
                             {"kappa", "0.75", "band exponent"},
                             {"mu_hat", "auto", "time constant (auto: pilot estimate at n = 64)"},
                             {"rays", "64", "number of directions"}}),
               true, run_shape});
  t.push_back({"perc", "crossing frequency eta(p) of [0, 3R] x [0, R]",
               common("50", {{"p", "0.5,0.6,0.7,0.8", "bond probabilities"},
                             {"R", "16", "rectangle height"},
                             {"lattice", "voronoi", "voronoi or delaunay"}}),
               true, run_perc});
  t.push_back({"pcstar", "bisection for the crossing threshold",
               common("50", {{"R", "8,16,32", "rectangle heights"},
                             {"tol", "0.02", "bracket width (>= 0.01)"},
                             {"lattice", "voronoi", "voronoi, delaunay or both"}}),
               true, run_pcstar});
  t.push_back({"renorm", "good boxes, circuit separation, k-separated density",
               common("20", {{"mode", "goodbox", "goodbox, separation or density"},
                             {"variant", "Y", "good-box variant Y, Z, V or W"},
                             {"L", "4,8,12,16", "box scales"},
                             {"grid", "6", "sites per side"},
                             {"dependence", "auto", "distance of the independence probe (auto: per variant)"},
                             {"p", "0.9", "V: bond probability"},
                             {"dist", "bernoulliAtom(0.1,1)", "W: edge weight law"},
                             {"eps", "1", "W: threshold"},
                             {"circuit_L", "20", "separation: box scale"},
                             {"max_extent", "5", "separation: largest rectangle side"},
                             {"s", "5", "density: animal size"},
                             {"k", "1,2,3", "density: separations"},
                             {"rho", "0.7", "density: open probability"},
                             {"density_grid", "5", "density: field side (odd, <= 7)"}}),
               true, run_renorm});
  t.push_back({"animals", "greedy lattice animals and path animals",
               common("50", {{"mode", "greedy", "greedy or paths"},
                             {"site_dist", "poisson(1)", "site law: constant, poisson, bernoulli, exponential"},
                             {"s", "4,6,8,10", "animal sizes"},
                             {"r", "1,3,5,7,9", "path lengths (exact up to 9)"},
                             {"L", "1", "box scale"},
                             {"direction", "1,1", "direction of sampled walks"}}),
               true, run_animals});
  t.push_back({"paths", "segment-walk lengths and cheapest long paths",
               common("50", {{"mode", "walk", "walk or cheapest"},
                             {"r", "auto", "walk: distances (auto 8,16,32,64); cheapest: edges (auto 4..8)"},
                             {"z", "1,2,3", "walk: tail levels"},
                             {"direction", "1,1", "walk direction"},
                             {"dist", "bernoulliAtom(0.4,1)", "cheapest: edge weight law"},
                             {"c", "0.2", "cheapest: level c in P(t_r <= c r)"}}),
               true, run_paths});
  t.push_back({"kappa", "self-avoiding path counts N_r from v(0)",
               common("20", {{"r_max", "10", "longest path (<= 10)"}}), true, run_kappa});
  t.push_back({"truncgap", "passage-time gap between the process and its truncation",
               common("20", {dist,
                             {"n", "16,32,64", "distances"},
                             {"a", "1", "cap constant in (8/a) log n"},
                             {"delta", "0.07142857142857142", "box exponent (default 1/14)"}}),
               true, run_truncgap});
  return t;
}

}  // namespace

std::string Table::csv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

const std::vector<Command>& command_table() {
  static const std::vector<Command> table = build_table();
  return table;
}

const Command* find_command(std::string_view name) {
  for (const auto& c : command_table()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

CampaignSetup setup_from(const Params& params) {
  CampaignSetup s;
  s.seed = params.unsigned_integer("seed");
  const auto threads = params.integer("threads");
  if (threads < 1 || threads > 1024) throw ConfigError("threads must lie in 1..1024");
  s.threads = static_cast<unsigned>(threads);
  const auto replicas = params.integer("replicas");
  if (replicas < 1) throw ConfigError("replicas must be at least 1");
  s.replicas = static_cast<std::size_t>(replicas);
  s.intensity = params.real("intensity");
  s.side = params.real("side");
  s.freeze_points = params.flag("freeze_points");
  return s;
}

}  // namespace fppdt::cli
