// Acceptance runner: one PASS/FAIL line per criterion. Runtime limits are
// part of each verdict. `--only N` runs a single criterion.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fppdt/delaunay.hpp"
#include "fppdt/fpp.hpp"
#include "fppdt/fpp_campaigns.hpp"
#include "fppdt/paths.hpp"
#include "fppdt/percolation.hpp"
#include "fppdt/point_process.hpp"
#include "fppdt/renorm.hpp"
#include "fppdt/rng.hpp"
#include "fppdt/stats.hpp"
#include "fppdt/voronoi.hpp"
#include "fppdt/weights.hpp"
#include "fppdt_cli/runner.hpp"
#include "oracles.hpp"

using namespace fppdt;
namespace fs = std::filesystem;

namespace {

unsigned g_threads = 1;

struct Verdict {
  bool pass = false;
  std::string details;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Verdict()> run;
};

std::string fmt(double x, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << x;
  return s.str();
}

CampaignSetup setup_with(std::size_t replicas, std::uint64_t seed) {
  CampaignSetup s;
  s.replicas = replicas;
  s.seed = seed;
  s.threads = g_threads;
  return s;
}

const WeightDistribution kLaws[] = {WeightDistribution::exponential(1.0), WeightDistribution::uniform(0.0, 2.0),
                                    WeightDistribution::bernoulli_atom(0.4, 1.0)};

// ---------------------------------------------------------------- 1
Verdict geometry_suite() {
  std::size_t triangles = 0, queries = 0, failed = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t n = 3 + s % 48;
    const Tessellation tess(sample_uniform(Window::square(10.0), n, 1000 + s));
    const auto a = oracle::audit_geometry(tess, 50, s);
    triangles += a.triangles_checked;
    queries += a.locate_queries;
    failed += !a.ok();
  }
  return {failed == 0 && queries >= 10000,
          "instances 200, triangles " + std::to_string(triangles) + ", locate queries " + std::to_string(queries) +
              ", failed instances " + std::to_string(failed)};
}

// ---------------------------------------------------------------- 2
Verdict fpp_oracle() {
  Rng rng(21);
  std::size_t pairs = 0, mismatches = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t n = 4 + s % 7;
    const auto g = build_delaunay(sample_uniform(Window::square(10.0), n, 2000 + s));
    const auto w = assign_weights(g, kLaws[rng.below(3)], s);
    const auto sg = oracle::small_graph(g, w);
    for (VertexId u = 0; u < static_cast<VertexId>(n); ++u) {
      for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
        std::vector<int> best;
        const double expect = oracle::min_path_time(sg, u, v, &best);
        const auto got = first_passage_time(g, w, u, v);
        ++pairs;
        if (got.time != expect || std::vector<int>(got.geodesic.begin(), got.geodesic.end()) != best) ++mismatches;
      }
    }
  }
  return {mismatches == 0, "instances 200, ordered pairs " + std::to_string(pairs) + ", mismatches " +
                               std::to_string(mismatches)};
}

// ---------------------------------------------------------------- 3
Verdict metric_invariants() {
  const auto pts = sample_poisson(Window::square(12.0), 1.0, 31);
  const auto g = build_delaunay(pts);
  const auto w = assign_weights(g, WeightDistribution::exponential(1.0), 32);
  const std::size_t n = std::min<std::size_t>(100, g.vertex_count());
  std::vector<std::vector<double>> T(n);
  for (std::size_t u = 0; u < n; ++u) T[u] = passage_times(g, w, static_cast<VertexId>(u));
  Rng rng(33);
  std::size_t triangle_failures = 0, symmetry_failures = 0;
  for (int k = 0; k < 10000; ++k) {
    const auto a = rng.below(n), b = rng.below(n), c = rng.below(n);
    if (T[a][c] > T[a][b] + T[b][c]) ++triangle_failures;
    if (T[a][b] != T[b][a]) ++symmetry_failures;
  }
  std::size_t scale_failures = 0, scale_checks = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto gs = build_delaunay(sample_poisson(Window::square(20.0), 1.0, 300 + s));
    const auto ws = assign_weights(gs, kLaws[s % 3], 400 + s);
    const auto base = passage_times(gs, ws, 0);
    const auto tripled = passage_times(gs, ws.scaled(3.0), 0);
    for (std::size_t v = 0; v < base.size(); ++v) {
      ++scale_checks;
      scale_failures += tripled[v] != 3.0 * base[v];
    }
  }
  return {triangle_failures == 0 && symmetry_failures == 0 && scale_failures == 0,
          "vertices " + std::to_string(n) + ", triples 10000, triangle failures " + std::to_string(triangle_failures) +
              ", symmetry failures " + std::to_string(symmetry_failures) + ", scaled-by-3 checks " +
              std::to_string(scale_checks) + " failures " + std::to_string(scale_failures)};
}

// Successive means may rise by at most 2 half-widths (the larger of the two).
bool nonincreasing_within(const std::vector<Summary>& xs, std::string& trace) {
  bool ok = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    trace += (i ? " " : "") + fmt(xs[i].mean) + "+-" + fmt(xs[i].half_width(), 2);
    if (i + 1 < xs.size() &&
        xs[i + 1].mean > xs[i].mean + 2.0 * std::max(xs[i].half_width(), xs[i + 1].half_width()))
      ok = false;
  }
  return ok;
}

// ---------------------------------------------------------------- 4
Verdict time_constant() {
  auto setup = setup_with(200, 4);
  setup.side = 320.0;
  const auto res = estimate_time_constant(WeightDistribution::exponential(1.0), {16, 32, 64, 128}, setup);
  std::vector<Summary> ratios;
  for (const auto& c : res.data.cells) ratios.push_back(c.ratio);
  std::string trace;
  const bool mono = nonincreasing_within(ratios, trace);
  const bool positive = res.mu.ci_low > 0.0;
  return {mono && positive, "mu_hat(128) " + fmt(res.mu_hat) + " CI [" + fmt(res.mu.ci_low) + ", " +
                                fmt(res.mu.ci_high) + "]; T/n by n: " + trace};
}

// ---------------------------------------------------------------- 5
Verdict variance_slope() {
  const auto res =
      variance_scaling(WeightDistribution::exponential(1.0), {16, 32, 64, 128, 256}, setup_with(300, 5));
  std::string vars;
  for (const auto& c : res.data.cells) vars += (vars.empty() ? "" : " ") + fmt(c.time.variance);
  return {res.fit.slope < 1.2, "slope " + fmt(res.fit.slope) + " (se " + fmt(res.fit.slope_se, 3) +
                                   "), Var T by n: " + vars};
}

// ---------------------------------------------------------------- 6
Verdict shape() {
  const auto dist = WeightDistribution::exponential(1.0);
  const auto setup = setup_with(100, 6);
  CampaignSetup pilot = setup;
  pilot.seed = derive_seed(setup.seed, 0, "pilot");
  const double mu_hat = estimate_time_constant(dist, {64}, pilot).mu_hat;
  const auto res = shape_deviation(dist, {32, 64, 128}, 0.75, mu_hat, setup, 64);
  bool mono = true;
  std::string trace;
  for (std::size_t i = 0; i < res.cells.size(); ++i) {
    trace += (i ? " " : "") + fmt(res.cells[i].in_band.mean);
    if (i && res.cells[i].in_band.mean < res.cells[i - 1].in_band.mean) mono = false;
  }
  const double last = res.cells.back().in_band.mean;
  return {mono && last >= 0.9, "mu_hat " + fmt(mu_hat) + " (pilot), in-band fraction at t=32,64,128: " + trace};
}

// ---------------------------------------------------------------- 7
Verdict percolation() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.5 + 0.03 * i);
  const auto curve = eta_curve(grid, 16.0, setup_with(400, 7));
  bool mono = true;
  std::string trace;
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    trace += (i ? " " : "") + fmt(curve.points[i].eta.mean, 3);
    if (i && curve.points[i].eta.mean < curve.points[i - 1].eta.mean) mono = false;
  }
  const auto vor = estimate_pc_star({16.0, 32.0}, 0.02, setup_with(400, 70), BondLattice::kVoronoi);
  const auto del = estimate_pc_star({16.0, 32.0}, 0.02, setup_with(400, 71), BondLattice::kDelaunay);
  const double m16 = vor.estimates[0].midpoint(), m32 = vor.estimates[1].midpoint();
  const bool agree = std::abs(m16 - m32) <= 0.1;
  // duality probe on the R = 32 medians with their order-statistic intervals
  const auto& v = vor.estimates[1];
  const auto& d = del.estimates[1];
  const double hw_v = 0.5 * (v.median_high - v.median_low), hw_d = 0.5 * (d.median_high - d.median_low);
  const double combined = std::hypot(hw_v, hw_d);
  const double sum = v.median + d.median;
  const bool duality = sum >= 1.0 - combined;
  return {mono && curve.violations == 0 && agree && duality,
          "eta(p=0.50..0.80) " + trace + "; violations " + std::to_string(curve.violations) +
              "; voronoi brackets R=16 [" + fmt(vor.estimates[0].lo) + ", " + fmt(vor.estimates[0].hi) + "] R=32 [" +
              fmt(v.lo) + ", " + fmt(v.hi) + "]; delaunay median " + fmt(d.median) + " + voronoi median " +
              fmt(v.median) + " = " + fmt(sum) + " vs 1 - " + fmt(combined, 3)};
}

// ---------------------------------------------------------------- 8
std::vector<Point> sub_box_centres(const Rect& box, int skip) {
  std::vector<Point> out;
  const double w = box.width() / 6.0, h = box.height() / 6.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i * 6 + j != skip) out.push_back({box.lo.x + (i + 0.5) * w, box.lo.y + (j + 0.5) * h});
  return out;
}

SiteField random_field(std::uint64_t seed, int levels) {
  Rng rng(seed);
  std::vector<double> v(25);
  for (double& x : v) x = static_cast<double>(rng.below(static_cast<std::uint64_t>(levels)));
  return SiteField({-2, -2}, {2, 2}, v);
}

Verdict renormalization() {
  const Rect box{{0, 0}, {6, 6}};
  const bool table = is_full_box(box, sub_box_centres(box, -1)) && !is_full_box(box, std::vector<Point>{}) &&
                     !is_full_box(box, sub_box_centres(box, 17));

  // dense instances until 200 have every circuit box full
  std::size_t checked = 0, passed = 0, drawn = 0;
  for (std::uint64_t batch = 0; checked < 200 && batch < 10; ++batch) {
    const auto res = separation_campaign(SeparationParams{}, setup_with(220, 80 + batch));
    for (const auto& inst : res.instances) {
      if (checked == 200) break;
      ++drawn;
      if (!inst.full) continue;
      ++checked;
      passed += inst.separated;
    }
  }

  std::size_t greedy_bad = 0;
  Rng rng(81);
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto f = random_field(8100 + t, 6);
    const int s = 1 + static_cast<int>(rng.below(7));
    double best = 0.0;
    for (int k = 1; k <= s; ++k) {
      for (const auto& a : oracle::animals_by_growth(f.first(), f.last(), k)) {
        double sum = 0.0;
        for (const Site z : a) sum += f[z];
        best = std::max(best, sum);
      }
    }
    greedy_bad += greedy_animal(f, s, AnimalMode::kExact).value != best;
  }

  std::size_t density_bad = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto f = random_field(8200 + t, 2);
    const int k = 1 + static_cast<int>(t % 3);
    const int s = 3 + static_cast<int>(t % 4);
    std::size_t best = SIZE_MAX;
    for (const auto& a : oracle::animals_by_growth(f.first(), f.last(), s)) {
      std::vector<Site> open;
      for (const Site z : a)
        if (f[z] != 0.0) open.push_back(z);
      best = std::min(best, oracle::max_separated_brute(open, k));
    }
    density_bad += open_density(f, s, k).value != best;
  }

  return {table && checked == 200 && passed == checked && greedy_bad == 0 && density_bad == 0,
          std::string("full-box table ") + (table ? "exact" : "WRONG") + "; separation " + std::to_string(passed) +
              "/" + std::to_string(checked) + " (" + std::to_string(drawn) + " drawn); greedy mismatches " +
              std::to_string(greedy_bad) + "/100; open-density mismatches " + std::to_string(density_bad) + "/100"};
}

// ---------------------------------------------------------------- 9
bool walk_verified(const SegmentWalk& w, const VoronoiDiagram& vd) {
  const auto& g = vd.delaunay();
  const auto& path = w.path.vertices;
  const auto pts = g.vertices().points();
  if (path.front() != oracle::nearest(pts, w.from) || path.back() != oracle::nearest(pts, w.to)) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto e = g.edge_index(path[i], path[i + 1]);
    if (!e) return false;
    const auto c = vd.dual_carrier(*e);
    if (!oracle::segments_meet(w.from, w.to, c[0], c[1])) return false;
  }
  return true;
}

Verdict paths() {
  std::size_t walks = 0, unverified = 0, violations = 0, perturbed = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Tessellation tess(sample_poisson(Window::centered(40.0), 1.0, 900 + s));
    Rng rng(910 + s);
    for (int q = 0; q < 1000; ++q) {
      const Point a{rng.uniform(-14, 14), rng.uniform(-14, 14)}, b{rng.uniform(-14, 14), rng.uniform(-14, 14)};
      const auto w = segment_walk(a, b, tess.diagram());
      ++walks;
      unverified += !walk_verified(w, tess.diagram());
      violations += !w.path.self_avoiding;
      perturbed += w.perturbed;
    }
  }

  std::size_t tr_bad = 0;
  Rng rng(92);
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto g = build_delaunay(sample_uniform(Window::centered(8.0), 12, 9300 + t));
    const auto w = assign_weights(g, kLaws[t % 3], 9400 + t);
    const int r = 1 + static_cast<int>(rng.below(8));
    tr_bad += cheapest_long_path(g, w, 0, r) != oracle::cheapest_exact_r(oracle::small_graph(g, w), 0, r);
  }

  const auto scan =
      cheapest_path_scan(WeightDistribution::bernoulli_atom(0.4, 1.0), {4, 5, 6, 7, 8}, 0.2, setup_with(400, 95));
  bool decreasing = true;
  std::string trace;
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    trace += (i ? " " : "") + fmt(scan.rows[i].below.mean, 3);
    if (i && scan.rows[i].below.mean > scan.rows[i - 1].below.mean) decreasing = false;
  }
  if (scan.rows.back().below.mean >= scan.rows.front().below.mean) decreasing = false;

  return {unverified == 0 && tr_bad == 0 && decreasing,
          "walks " + std::to_string(walks) + " unverified " + std::to_string(unverified) + " (perturbed " +
              std::to_string(perturbed) + ", self-avoidance violations " + std::to_string(violations) +
              "); t_r mismatches " + std::to_string(tr_bad) + "/100; P(t_r <= 0.2 r) at r=4..8: " + trace};
}

// ---------------------------------------------------------------- 10
Verdict truncation() {
  const auto res =
      truncation_gap(WeightDistribution::exponential(1.0), {32, 64, 128}, 1.0, 1.0 / 14.0, setup_with(200, 10));
  std::string trace;
  for (std::size_t i = 0; i < res.cells.size(); ++i) {
    const auto& c = res.cells[i].square_gap;
    trace += (i ? " " : "") + fmt(c.mean) + "+-" + fmt(c.half_width(), 2);
  }
  const auto& first = res.cells.front().square_gap;
  const auto& last = res.cells.back().square_gap;
  const bool ok = last.mean <= first.mean + 2.0 * std::max(first.half_width(), last.half_width());
  return {ok, "E gap^2 at n=32,64,128: " + trace};
}

// ---------------------------------------------------------------- 11
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict reproducibility() {
  struct Run {
    std::string command;
    std::vector<std::string> sets;
  };
  const std::vector<Run> runs = {
      {"mu", {"replicas=12", "n=8,16,32"}},
      {"fluct", {"replicas=100", "n=8,16"}},
      {"perc", {"replicas=40", "R=8"}},
      {"renorm", {"replicas=6", "mode=separation"}},
      {"paths", {"replicas=12", "r=8,16"}},
      {"truncgap", {"replicas=8", "n=16,32"}},
  };
  const fs::path root = fs::temp_directory_path() / ("fppdt_acceptance_" + std::to_string(::getpid()));
  std::size_t identical = 0;
  std::string failed;
  for (const auto& run : runs) {
    std::string csv[2];
    int code[2];
    for (int k = 0; k < 2; ++k) {
      ::setenv("FPPDT_THREADS", k ? "4" : "1", 1);
      const fs::path out = root / (run.command + (k ? "_t4" : "_t1"));
      fs::remove_all(out);
      cli::RunOptions o;
      o.command = run.command;
      o.assignments = run.sets;
      o.assignments.push_back("seed=11");
      o.out_dir = out.string();
      std::ostringstream log;
      code[k] = cli::run_command(o, log);
      csv[k] = slurp(out / (run.command + ".csv"));
    }
    if (code[0] == 0 && code[1] == 0 && !csv[0].empty() && csv[0] == csv[1]) {
      ++identical;
    } else {
      failed += " " + run.command;
    }
  }
  ::unsetenv("FPPDT_THREADS");
  fs::remove_all(root);
  return {identical == runs.size(), "byte-identical CSV for " + std::to_string(identical) + "/" +
                                        std::to_string(runs.size()) + " commands at FPPDT_THREADS=1 vs 4" +
                                        (failed.empty() ? "" : "; differing:" + failed)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fppdt acceptance runner"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);
  g_threads = std::max(1u, std::thread::hardware_concurrency());

  const std::vector<Criterion> criteria = {
      {1, "geometry oracle suite", 10, geometry_suite},
      {2, "passage times vs path enumeration", 60, fpp_oracle},
      {3, "metric and scaling invariants", 30, metric_invariants},
      {4, "time constant positivity", 15 * 60, time_constant},
      {5, "variance scaling", 60 * 60, variance_slope},
      {6, "shape consistency", 30 * 60, shape},
      {7, "percolation monotonicity and threshold", 30 * 60, percolation},
      {8, "renormalization suite", 10 * 60, renormalization},
      {9, "paths suite", 20 * 60, paths},
      {10, "truncation gap", 20 * 60, truncation},
      {11, "reproducibility across thread counts", 5 * 60, reproducibility},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = v.pass && in_time;
    all = all && pass;
    std::cout << (pass ? "PASS " : "FAIL ") << c.id << " " << c.name << ": " << v.details << " ("
              << fmt(secs, 3) << " s, limit " << c.limit_s << " s" << (in_time ? "" : ", over time") << ")"
              << std::endl;
  }
  return all ? 0 : 1;
}
