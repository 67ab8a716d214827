#pragma once

#include <cstdint>
#include <vector>

#include "fppdt/geometry.hpp"

namespace fppdt {

/// Homogeneous Poisson process of the given intensity on the window.
///
/// The window is cut into cells of expected occupancy at most 4; each cell
/// receives an independent Poisson count of uniform points, so the total is
/// Poisson(intensity * area) with i.i.d. uniform positions. The output is
/// stored in Hilbert-curve order, which is also the Delaunay insertion order.
/// Identical (window, intensity, seed) give bit-identical point lists.
PointSet sample_poisson(const Window& window, double intensity, std::uint64_t seed);

/// `count` i.i.d. uniform points (binomial process), Hilbert ordered.
PointSet sample_uniform(const Window& window, std::size_t count, std::uint64_t seed);

/// Reorders points along a Hilbert curve laid over the window (ties by x
/// then y). Returns the permutation: result[i] is the old index of the
/// point now stored at position i.
std::vector<std::size_t> hilbert_order(std::span<const Point> points, const Rect& frame);

/// Default exponent delta of the truncation box side n^delta.
inline constexpr double kDefaultTruncationDelta = 1.0 / 14.0;

/// Result of truncating a point set, with provenance for coupling.
struct TruncatedProcess {
  PointSet points;
  /// origin[i] = index in the input set of output point i, or -1 for a
  /// point inserted into an empty box.
  std::vector<std::int64_t> origin;
  std::size_t boxes_filled = 0;     ///< empty boxes that received a point
  std::size_t boxes_thinned = 0;    ///< boxes subsampled down to the cap
  std::size_t cap = 0;              ///< ceil(4 n^{2 delta})
  double box_side = 0.0;            ///< n^delta
};

/// Truncated process: boxes of side n^delta centred on n^delta * Z^2 (clipped
/// to the window). An empty box gets one uniform point; a box holding more
/// than ceil(4 n^{2 delta}) points keeps a uniform subsample of exactly that
/// many, drawn without replacement; every other box is left untouched.
TruncatedProcess truncated_process_detailed(const PointSet& points, std::int64_t n, double delta,
                                            std::uint64_t seed);

PointSet truncated_process(const PointSet& points, std::int64_t n, double delta,
                           std::uint64_t seed);

}  // namespace fppdt
