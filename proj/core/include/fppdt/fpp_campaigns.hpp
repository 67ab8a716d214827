#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fppdt/campaign.hpp"
#include "fppdt/geometry.hpp"
#include "fppdt/stats.hpp"
#include "fppdt/weights.hpp"

namespace fppdt {

/// One passage time T(0, n) of one replica.
struct PassageSample {
  std::int64_t n = 0;
  std::size_t replica = 0;
  double time = 0.0;
};

/// Per-n statistics: T(0, n) and T(0, n) / n.
struct DistanceCell {
  std::int64_t n = 0;
  Summary time;
  Summary ratio;
};

/// Geometry of the point-to-point campaigns: window [0, side]^2, margin
/// side / 8, endpoints (margin, side / 2) and (margin + n, side / 2).
struct LineWindow {
  double side = 0.0;
  double margin = 0.0;
};

/// Default side 2.5 * max(n); every n must fit between the margins.
LineWindow line_window(const std::vector<std::int64_t>& n_grid, double side);

struct PassageCampaign {
  LineWindow window;
  std::vector<PassageSample> samples;  ///< ordered by (n, replica)
  std::vector<DistanceCell> cells;     ///< ordered by n
};

/// Fresh points and weights per replica; one shortest-path run from v(0)
/// serves every n of the grid.
PassageCampaign sample_passage_times(const WeightDistribution& dist,
                                     const std::vector<std::int64_t>& n_grid,
                                     const CampaignSetup& setup);

struct TimeConstantResult {
  PassageCampaign data;
  double mu_hat = 0.0;  ///< mean of T(0, n) / n at the largest n
  Summary mu;           ///< its summary (CI)
};

TimeConstantResult estimate_time_constant(const WeightDistribution& dist,
                                          const std::vector<std::int64_t>& n_grid,
                                          const CampaignSetup& setup);

struct VarianceResult {
  PassageCampaign data;
  LineFit fit;  ///< log Var T(0, n) against log n
};

/// Needs at least 100 replicas and two grid points with positive variance.
VarianceResult variance_scaling(const WeightDistribution& dist, const std::vector<std::int64_t>& n_grid,
                                const CampaignSetup& setup);

struct TailRow {
  double r = 0.0;
  double threshold = 0.0;  ///< r n^kappa
  std::size_t exceed = 0;
  double frequency = 0.0;  ///< P(|T - mean| >= r n^kappa), empirical
  double bound_nu = 0.0;   ///< exp(-r^nu), nu = (4 kappa - 2) / 7
  double bound_alt = 0.0;  ///< exp(-r^nu'), nu' = 4 delta / (1 + 7 delta)
};

struct ConcentrationResult {
  PassageCampaign data;
  double kappa = 0.0;
  double nu = 0.0;
  double nu_alt = 0.0;
  Summary time;
  std::vector<TailRow> rows;
};

/// Tail table of |T(0, n) - mean| on the r grid. kappa in (1/2, 1]; at
/// least 10 replicas.
ConcentrationResult concentration_profile(const WeightDistribution& dist, std::int64_t n, double kappa,
                                          const std::vector<double>& r_grid, const CampaignSetup& setup);

struct ShapeSample {
  double t = 0.0;
  std::size_t replica = 0;
  std::size_t reached = 0;
  double in_band = 0.0;  ///< fraction of rays with radius inside the band
  double min_radius = 0.0;
  double max_radius = 0.0;
};

struct ShapeCell {
  double t = 0.0;
  double lower = 0.0;  ///< (t - t^kappa) / mu
  double upper = 0.0;  ///< (t + t^kappa) / mu
  Summary in_band;
};

struct ShapeResult {
  double side = 0.0;
  double mu_hat = 0.0;
  double kappa = 0.0;
  std::size_t rays = 0;
  std::vector<ShapeSample> samples;  ///< ordered by (t, replica)
  std::vector<ShapeCell> cells;
};

/// Unit directions at angles 2 pi k / count (count a multiple of 4); the
/// first quarter is computed, the rest are exact quarter turns of it.
std::vector<Point> ray_directions(std::size_t count);

/// Support function of a finite set relative to origin along each ray.
std::vector<double> directional_radii(std::span<const Point> points, Point origin,
                                      std::span<const Point> rays);

/// Reached sets B_0(t) in a window centred on the origin; rays = 64.
ShapeResult shape_deviation(const WeightDistribution& dist, const std::vector<double>& t_grid,
                            double kappa, double mu_hat, const CampaignSetup& setup,
                            std::size_t rays = 64);

struct SubadditivityRow {
  std::int64_t n = 0;
  Summary doubling_gap;  ///< T(0, 2n) - 2 T(0, n), paired per replica
};

struct SubadditivityResult {
  PassageCampaign data;
  double mu_hat = 0.0;
  std::vector<SubadditivityRow> doubling;
  std::vector<DistanceCell> excess;  ///< ratio field holds T(0, n)/n - T(0, n_max)/n_max
};

/// Grid must contain at least one (n, 2n) pair.
SubadditivityResult subadditivity_check(const WeightDistribution& dist,
                                        const std::vector<std::int64_t>& n_grid,
                                        const CampaignSetup& setup);

struct UniquenessResult {
  std::int64_t n = 0;
  std::vector<char> tie;  ///< per replica
  Summary frequency;
};

UniquenessResult geodesic_uniqueness_probe(const WeightDistribution& dist, std::int64_t n,
                                           const CampaignSetup& setup);

struct TruncationSample {
  std::int64_t n = 0;
  std::size_t replica = 0;
  double time = 0.0;
  double truncated_time = 0.0;
  std::size_t boxes_filled = 0;
  std::size_t boxes_thinned = 0;
};

struct TruncationCell {
  std::int64_t n = 0;
  Summary abs_gap;
  Summary square_gap;
};

struct TruncationResult {
  double a = 0.0;
  double delta = 0.0;
  std::vector<TruncationSample> samples;  ///< ordered by (n, replica)
  std::vector<TruncationCell> cells;
};

/// |T_n - Tbar_n| where Tbar uses the truncated process and truncated
/// weights. Weights are keyed by point identity so the two environments
/// agree on every edge they share.
TruncationResult truncation_gap(const WeightDistribution& dist, const std::vector<std::int64_t>& n_grid,
                                double a, double delta, const CampaignSetup& setup);

}  // namespace fppdt
