#include "fppdt/fpp_campaigns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fppdt/fpp.hpp"
#include "fppdt/parallel.hpp"
#include "fppdt/point_process.hpp"

namespace fppdt {
namespace {

void check_grid(const std::vector<std::int64_t>& n_grid) {
  if (n_grid.empty()) throw InvalidArgument("distance grid is empty");
  for (const auto n : n_grid) {
    if (n < 8) throw InvalidArgument("grid distances must be at least 8");
  }
}

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// T(v(0), v(n)) for each n of the grid on one replica.
std::vector<double> replica_times(const WeightDistribution& dist, const std::vector<std::int64_t>& grid,
                                  const LineWindow& lw, double intensity, const ReplicaSeeds& seeds) {
  const Window window({0.0, 0.0}, {lw.side, lw.side}, lw.margin);
  const PointSet points = sample_poisson(window, intensity, seeds.points);
  const DelaunayGraph graph = build_delaunay(points);
  const EdgeWeights weights = assign_weights(graph, dist, seeds.weights);
  const TileLocator locator(points);
  const double y = 0.5 * lw.side;
  const VertexId source = locator.nearest({lw.margin, y});
  std::vector<VertexId> targets;
  for (const auto n : grid) targets.push_back(locator.nearest({lw.margin + static_cast<double>(n), y}));
  ShortestPaths sp(graph, weights);
  sp.run(source, kUnreached, targets);
  std::vector<double> out;
  for (const VertexId t : targets) {
    if (!sp.settled(t)) throw NumericError("endpoint unreachable");
    out.push_back(sp.distance(t));
  }
  return out;
}

std::vector<DistanceCell> summarize_cells(const std::vector<std::int64_t>& grid,
                                          const std::vector<PassageSample>& samples) {
  std::vector<DistanceCell> cells;
  for (const auto n : grid) {
    std::vector<double> t, ratio;
    for (const auto& s : samples) {
      if (s.n != n) continue;
      t.push_back(s.time);
      ratio.push_back(s.time / static_cast<double>(n));
    }
    cells.push_back({n, summarize(t), summarize(ratio)});
  }
  return cells;
}

// Per-replica times at distance n, in replica order.
std::vector<double> times_at(const PassageCampaign& data, std::int64_t n) {
  std::vector<double> t;
  for (const auto& s : data.samples) {
    if (s.n == n) t.push_back(s.time);
  }
  return t;
}

}  // namespace

LineWindow line_window(const std::vector<std::int64_t>& n_grid, double side) {
  if (n_grid.empty()) throw InvalidArgument("distance grid is empty");
  const auto n_max = static_cast<double>(*std::max_element(n_grid.begin(), n_grid.end()));
  LineWindow lw;
  lw.side = side > 0.0 ? side : 2.5 * n_max;
  lw.margin = lw.side / 8.0;
  if (n_max > lw.side - 2.0 * lw.margin) {
    throw InvalidArgument("distance " + std::to_string(static_cast<std::int64_t>(n_max)) +
                          " does not fit a window of side " + std::to_string(lw.side));
  }
  return lw;
}

PassageCampaign sample_passage_times(const WeightDistribution& dist,
                                     const std::vector<std::int64_t>& n_grid,
                                     const CampaignSetup& setup) {
  check_setup(setup);
  check_grid(n_grid);
  const auto grid = sorted_unique(n_grid);
  PassageCampaign out;
  out.window = line_window(grid, setup.side);
  std::vector<std::vector<double>> per_replica(setup.replicas);
  parallel_for(setup.replicas, setup.threads, [&](std::size_t r) {
    per_replica[r] = replica_times(dist, grid, out.window, setup.intensity, replica_seeds(setup, r));
  });
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t r = 0; r < setup.replicas; ++r) out.samples.push_back({grid[k], r, per_replica[r][k]});
  }
  out.cells = summarize_cells(grid, out.samples);
  return out;
}

TimeConstantResult estimate_time_constant(const WeightDistribution& dist,
                                          const std::vector<std::int64_t>& n_grid,
                                          const CampaignSetup& setup) {
  TimeConstantResult res;
  res.data = sample_passage_times(dist, n_grid, setup);
  res.mu = res.data.cells.back().ratio;
  res.mu_hat = res.mu.mean;
  return res;
}

VarianceResult variance_scaling(const WeightDistribution& dist, const std::vector<std::int64_t>& n_grid,
                                const CampaignSetup& setup) {
  check_setup(setup, 100);
  if (sorted_unique(n_grid).size() < 2) throw InvalidArgument("variance fit needs two distinct distances");
  VarianceResult res;
  res.data = sample_passage_times(dist, n_grid, setup);
  std::vector<double> x, y;
  for (const auto& c : res.data.cells) {
    if (c.time.variance > 0.0) {
      x.push_back(std::log(static_cast<double>(c.n)));
      y.push_back(std::log(c.time.variance));
    }
  }
  // A degenerate (zero-variance) law has nothing to fit.
  if (x.size() >= 2) res.fit = fit_line(x, y);
  return res;
}

ConcentrationResult concentration_profile(const WeightDistribution& dist, std::int64_t n, double kappa,
                                          const std::vector<double>& r_grid, const CampaignSetup& setup) {
  if (!(kappa > 0.5 && kappa <= 1.0)) throw InvalidArgument("kappa must lie in (1/2, 1]");
  if (setup.replicas < 10) throw InvalidArgument("tail table needs at least 10 replicas");
  if (r_grid.empty()) throw InvalidArgument("r grid is empty");
  for (const double r : r_grid) {
    if (!(r >= 0.0)) throw InvalidArgument("r values must be >= 0");
  }
  ConcentrationResult res;
  res.kappa = kappa;
  res.nu = (4.0 * kappa - 2.0) / 7.0;
  const double delta = (2.0 * kappa - 1.0) / 7.0;
  res.nu_alt = 4.0 * delta / (1.0 + 7.0 * delta);
  res.data = sample_passage_times(dist, {n}, setup);
  const auto t = times_at(res.data, n);
  res.time = summarize(t);
  std::vector<double> rs(r_grid);
  std::sort(rs.begin(), rs.end());
  const double scale = std::pow(static_cast<double>(n), kappa);
  for (const double r : rs) {
    TailRow row;
    row.r = r;
    row.threshold = r * scale;
    for (const double x : t) row.exceed += std::abs(x - res.time.mean) >= row.threshold;
    row.frequency = static_cast<double>(row.exceed) / static_cast<double>(t.size());
    row.bound_nu = std::exp(-std::pow(r, res.nu));
    row.bound_alt = std::exp(-std::pow(r, res.nu_alt));
    res.rows.push_back(row);
  }
  return res;
}

std::vector<Point> ray_directions(std::size_t count) {
  if (count == 0 || count % 4 != 0) throw InvalidArgument("ray count must be a positive multiple of 4");
  std::vector<Point> rays(count);
  const std::size_t quarter = count / 4;
  for (std::size_t k = 0; k < quarter; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    rays[k] = k == 0 ? Point{1.0, 0.0} : Point{std::cos(a), std::sin(a)};
  }
  for (std::size_t k = quarter; k < count; ++k) {
    const Point p = rays[k - quarter];
    rays[k] = {-p.y, p.x};
  }
  return rays;
}

std::vector<double> directional_radii(std::span<const Point> points, Point origin,
                                      std::span<const Point> rays) {
  std::vector<double> radii(rays.size(), -kUnreached);
  for (const Point& p : points) {
    const Point d = p - origin;
    for (std::size_t k = 0; k < rays.size(); ++k) radii[k] = std::max(radii[k], dot(d, rays[k]));
  }
  return radii;
}

ShapeResult shape_deviation(const WeightDistribution& dist, const std::vector<double>& t_grid,
                            double kappa, double mu_hat, const CampaignSetup& setup, std::size_t rays) {
  check_setup(setup);
  if (t_grid.empty()) throw InvalidArgument("t grid is empty");
  if (!(kappa > 0.0 && kappa <= 1.0)) throw InvalidArgument("kappa must lie in (0, 1]");
  if (!(mu_hat > 0.0) || !std::isfinite(mu_hat)) throw InvalidArgument("shape needs a positive time constant");
  std::vector<double> ts(t_grid);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  if (!(ts.front() >= 0.0)) throw InvalidArgument("t values must be >= 0");

  ShapeResult res;
  res.mu_hat = mu_hat;
  res.kappa = kappa;
  res.rays = rays;
  const double t_max = ts.back();
  const double reach = (t_max + std::pow(t_max, kappa)) / mu_hat;
  // The admissible half-width (3/8 of the side) covers the upper band edge.
  res.side = setup.side > 0.0 ? setup.side : std::max(reach / 0.375, 16.0);
  if (reach > 0.375 * res.side) throw InvalidArgument("t too large for the window");
  const auto dirs = ray_directions(rays);

  std::vector<std::vector<ShapeSample>> per_replica(setup.replicas);
  parallel_for(setup.replicas, setup.threads, [&](std::size_t r) {
    const ReplicaSeeds seeds = replica_seeds(setup, r);
    const Window window = Window::centered(res.side);
    const PointSet points = sample_poisson(window, setup.intensity, seeds.points);
    const DelaunayGraph graph = build_delaunay(points);
    const EdgeWeights weights = assign_weights(graph, dist, seeds.weights);
    const VertexId source = TileLocator(points).nearest({0.0, 0.0});
    ShortestPaths sp(graph, weights);
    sp.run(source, t_max);
    const auto order = sp.settled_order();
    std::vector<double> radii(rays, -kUnreached);
    std::size_t next = 0;
    for (const double t : ts) {
      for (; next < order.size() && sp.distance(order[next]) <= t; ++next) {
        const Point d = graph.point(order[next]);
        for (std::size_t k = 0; k < rays; ++k) radii[k] = std::max(radii[k], dot(d, dirs[k]));
      }
      const double lower = (t - std::pow(t, kappa)) / mu_hat;
      const double upper = (t + std::pow(t, kappa)) / mu_hat;
      ShapeSample s;
      s.t = t;
      s.replica = r;
      s.reached = next;
      std::size_t inside = 0;
      for (const double x : radii) inside += x >= lower && x <= upper;
      s.in_band = static_cast<double>(inside) / static_cast<double>(rays);
      s.min_radius = *std::min_element(radii.begin(), radii.end());
      s.max_radius = *std::max_element(radii.begin(), radii.end());
      per_replica[r].push_back(s);
    }
  });
  for (std::size_t k = 0; k < ts.size(); ++k) {
    std::vector<double> f;
    for (std::size_t r = 0; r < setup.replicas; ++r) {
      res.samples.push_back(per_replica[r][k]);
      f.push_back(per_replica[r][k].in_band);
    }
    const double t = ts[k];
    res.cells.push_back({t, (t - std::pow(t, kappa)) / mu_hat, (t + std::pow(t, kappa)) / mu_hat, summarize(f)});
  }
  return res;
}

SubadditivityResult subadditivity_check(const WeightDistribution& dist,
                                        const std::vector<std::int64_t>& n_grid,
                                        const CampaignSetup& setup) {
  const auto grid = sorted_unique(n_grid);
  std::vector<std::int64_t> pairs;
  for (const auto n : grid) {
    if (std::binary_search(grid.begin(), grid.end(), 2 * n)) pairs.push_back(n);
  }
  if (pairs.empty()) throw InvalidArgument("grid has no (n, 2n) pair");
  SubadditivityResult res;
  res.data = sample_passage_times(dist, grid, setup);
  const std::int64_t n_max = grid.back();
  const auto t_max = times_at(res.data, n_max);
  res.mu_hat = res.data.cells.back().ratio.mean;
  for (const auto n : pairs) {
    const auto a = times_at(res.data, n);
    const auto b = times_at(res.data, 2 * n);
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = b[i] - 2.0 * a[i];
    res.doubling.push_back({n, summarize(d)});
  }
  for (const auto n : grid) {
    const auto a = times_at(res.data, n);
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      d[i] = a[i] / static_cast<double>(n) - t_max[i] / static_cast<double>(n_max);
    }
    res.excess.push_back({n, summarize(a), summarize(d)});
  }
  return res;
}

UniquenessResult geodesic_uniqueness_probe(const WeightDistribution& dist, std::int64_t n,
                                           const CampaignSetup& setup) {
  check_setup(setup);
  if (n < 1) throw InvalidArgument("distance must be positive");
  UniquenessResult res;
  res.n = n;
  res.tie.assign(setup.replicas, 0);
  const LineWindow lw = line_window({n}, setup.side);
  parallel_for(setup.replicas, setup.threads, [&](std::size_t r) {
    const ReplicaSeeds seeds = replica_seeds(setup, r);
    const Window window({0.0, 0.0}, {lw.side, lw.side}, lw.margin);
    const PointSet points = sample_poisson(window, setup.intensity, seeds.points);
    const DelaunayGraph graph = build_delaunay(points);
    const EdgeWeights weights = assign_weights(graph, dist, seeds.weights);
    const TileLocator locator(points);
    const VertexId u = locator.nearest({lw.margin, 0.5 * lw.side});
    const VertexId v = locator.nearest({lw.margin + static_cast<double>(n), 0.5 * lw.side});
    res.tie[r] = has_geodesic_tie(graph, weights, u, v) ? 1 : 0;
  });
  std::size_t ties = 0;
  for (const char t : res.tie) ties += t != 0;
  res.frequency = summarize_proportion(ties, res.tie.size());
  return res;
}

TruncationResult truncation_gap(const WeightDistribution& dist, const std::vector<std::int64_t>& n_grid,
                                double a, double delta, const CampaignSetup& setup) {
  check_setup(setup);
  check_grid(n_grid);
  if (!(a > 0.0)) throw InvalidArgument("truncation parameter a must be > 0");
  const auto grid = sorted_unique(n_grid);
  TruncationResult res;
  res.a = a;
  res.delta = delta;
  for (const auto n : grid) {
    const LineWindow lw = line_window({n}, setup.side);
    std::vector<TruncationSample> rows(setup.replicas);
    parallel_for(setup.replicas, setup.threads, [&](std::size_t r) {
      // Streams are keyed by n as well, so each grid point is an
      // independent experiment.
      CampaignSetup keyed = setup;
      keyed.seed = derive_seed(setup.seed, static_cast<std::uint64_t>(n), "distance");
      const ReplicaSeeds seeds = replica_seeds(keyed, r);
      const Window window({0.0, 0.0}, {lw.side, lw.side}, lw.margin);
      const Point x{lw.margin, 0.5 * lw.side};
      const Point y{lw.margin + static_cast<double>(n), 0.5 * lw.side};

      const PointSet points = sample_poisson(window, setup.intensity, seeds.points);
      const DelaunayGraph graph = build_delaunay(points);
      std::vector<std::int64_t> ids(points.size());
      for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<std::int64_t>(i);
      const EdgeWeights weights = assign_weights_keyed(graph, dist, seeds.weights, ids);
      const TileLocator locator(points);
      const double t = passage_time(graph, weights, locator.nearest(x), locator.nearest(y));

      const TruncatedProcess tp = truncated_process_detailed(
          points, n, delta, derive_seed(keyed.seed, r, "truncation"));
      const DelaunayGraph tgraph = build_delaunay(tp.points);
      std::vector<std::int64_t> tids(tp.points.size());
      for (std::size_t i = 0; i < tids.size(); ++i) {
        tids[i] = tp.origin[i] >= 0 ? tp.origin[i] : static_cast<std::int64_t>(points.size() + i);
      }
      const EdgeWeights tweights =
          truncate_weights(assign_weights_keyed(tgraph, dist, seeds.weights, tids), n, a);
      const TileLocator tlocator(tp.points);
      const double tt = passage_time(tgraph, tweights, tlocator.nearest(x), tlocator.nearest(y));
      rows[r] = {n, r, t, tt, tp.boxes_filled, tp.boxes_thinned};
    });
    std::vector<double> abs_gap, sq_gap;
    for (const auto& s : rows) {
      const double g = s.time - s.truncated_time;
      abs_gap.push_back(std::abs(g));
      sq_gap.push_back(g * g);
      res.samples.push_back(s);
    }
    res.cells.push_back({n, summarize(abs_gap), summarize(sq_gap)});
  }
  return res;
}

}  // namespace fppdt
