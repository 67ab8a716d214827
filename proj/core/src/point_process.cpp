#include "fppdt/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "fppdt/rng.hpp"

namespace fppdt {
namespace {

constexpr int kHilbertOrder = 16;

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y) {
  std::uint64_t d = 0;
  const std::uint32_t n = 1u << kHilbertOrder;
  for (std::uint32_t s = n / 2; s > 0; s /= 2) {
    const std::uint32_t rx = (x & s) ? 1u : 0u;
    const std::uint32_t ry = (y & s) ? 1u : 0u;
    d += static_cast<std::uint64_t>(s) * s * ((3u * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = n - 1 - x;
        y = n - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

std::uint32_t quantize(double v, double lo, double hi) {
  const double n = static_cast<double>(1u << kHilbertOrder);
  double t = (v - lo) / (hi - lo) * n;
  if (!(t >= 0.0)) t = 0.0;
  if (t >= n) t = n - 1.0;
  return static_cast<std::uint32_t>(t);
}

std::vector<Point> permuted(std::span<const Point> points, const std::vector<std::size_t>& order) {
  std::vector<Point> out;
  out.reserve(order.size());
  for (const std::size_t i : order) out.push_back(points[i]);
  return out;
}

}  // namespace

std::vector<std::size_t> hilbert_order(std::span<const Point> points, const Rect& frame) {
  struct Keyed {
    std::uint64_t key;
    std::size_t index;
  };
  std::vector<Keyed> keyed(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point p = points[i];
    keyed[i] = {hilbert_index(quantize(p.x, frame.lo.x, frame.hi.x),
                              quantize(p.y, frame.lo.y, frame.hi.y)),
                i};
  }
  std::sort(keyed.begin(), keyed.end(), [&](const Keyed& a, const Keyed& b) {
    if (a.key != b.key) return a.key < b.key;
    const Point pa = points[a.index];
    const Point pb = points[b.index];
    if (pa.x != pb.x) return pa.x < pb.x;
    if (pa.y != pb.y) return pa.y < pb.y;
    return a.index < b.index;
  });
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) order[i] = keyed[i].index;
  return order;
}

PointSet sample_poisson(const Window& window, double intensity, std::uint64_t seed) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw InvalidArgument("Poisson intensity must be positive and finite");
  }
  const Rect frame = window.rect();
  const double cell_side = std::sqrt(4.0 / intensity);
  const auto nx = static_cast<std::size_t>(std::max(1.0, std::ceil(frame.width() / cell_side)));
  const auto ny = static_cast<std::size_t>(std::max(1.0, std::ceil(frame.height() / cell_side)));
  const double wx = frame.width() / static_cast<double>(nx);
  const double wy = frame.height() / static_cast<double>(ny);
  const double cell_mean = intensity * wx * wy;

  Rng rng(seed);
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(intensity * frame.area() * 1.05) + 16);
  for (std::size_t j = 0; j < ny; ++j) {
    const double y0 = frame.lo.y + wy * static_cast<double>(j);
    const double y1 = j + 1 == ny ? frame.hi.y : frame.lo.y + wy * static_cast<double>(j + 1);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x0 = frame.lo.x + wx * static_cast<double>(i);
      const double x1 = i + 1 == nx ? frame.hi.x : frame.lo.x + wx * static_cast<double>(i + 1);
      const std::uint64_t count = rng.poisson_small(cell_mean);
      for (std::uint64_t k = 0; k < count; ++k) {
        const double x = rng.uniform(x0, x1);
        const double y = rng.uniform(y0, y1);
        points.push_back({x, y});
      }
    }
  }
  const auto order = hilbert_order(points, frame);
  return PointSet::trusted(permuted(points, order), window);
}

PointSet sample_uniform(const Window& window, std::size_t count, std::uint64_t seed) {
  const Rect frame = window.rect();
  Rng rng(seed);
  std::vector<Point> points(count);
  for (Point& p : points) {
    p.x = rng.uniform(frame.lo.x, frame.hi.x);
    p.y = rng.uniform(frame.lo.y, frame.hi.y);
  }
  const auto order = hilbert_order(points, frame);
  return PointSet::trusted(permuted(points, order), window);
}

TruncatedProcess truncated_process_detailed(const PointSet& points, std::int64_t n, double delta,
                                            std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("truncated_process: n must be positive");
  if (!(delta > 0.0) || !(delta < 0.125)) {
    throw InvalidArgument("truncated_process: delta must lie in (0, 1/8)");
  }
  const double side = std::pow(static_cast<double>(n), delta);
  const auto cap = static_cast<std::size_t>(std::ceil(4.0 * std::pow(static_cast<double>(n), 2.0 * delta)));
  const Rect frame = points.window().rect();

  // Box z covers [side*(z - 1/2), side*(z + 1/2)); half-open so that every
  // point has exactly one owner.
  auto box_of = [side](double v) { return static_cast<std::int64_t>(std::floor(v / side + 0.5)); };
  const std::int64_t zx0 = box_of(frame.lo.x);
  const std::int64_t zx1 = box_of(frame.hi.x);
  const std::int64_t zy0 = box_of(frame.lo.y);
  const std::int64_t zy1 = box_of(frame.hi.y);
  const std::size_t cols = static_cast<std::size_t>(zx1 - zx0 + 1);
  const std::size_t rows = static_cast<std::size_t>(zy1 - zy0 + 1);

  std::vector<std::vector<std::size_t>> members(cols * rows);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point p = points[i];
    const auto cx = static_cast<std::size_t>(std::clamp(box_of(p.x), zx0, zx1) - zx0);
    const auto cy = static_cast<std::size_t>(std::clamp(box_of(p.y), zy0, zy1) - zy0);
    members[cy * cols + cx].push_back(i);
  }

  Rng rng(seed);
  TruncatedProcess out{PointSet::trusted({}, points.window()), {}, 0, 0, cap, side};
  std::vector<Point> kept;
  std::vector<std::int64_t> origin;
  kept.reserve(points.size() + points.size() / 4);
  for (std::size_t cy = 0; cy < rows; ++cy) {
    for (std::size_t cx = 0; cx < cols; ++cx) {
      auto& box = members[cy * cols + cx];
      const double zx = static_cast<double>(zx0 + static_cast<std::int64_t>(cx));
      const double zy = static_cast<double>(zy0 + static_cast<std::int64_t>(cy));
      const Rect clipped{{std::max(frame.lo.x, side * (zx - 0.5)), std::max(frame.lo.y, side * (zy - 0.5))},
                         {std::min(frame.hi.x, side * (zx + 0.5)), std::min(frame.hi.y, side * (zy + 0.5))}};
      if (box.empty()) {
        if (!(clipped.width() > 0.0) || !(clipped.height() > 0.0)) continue;
        kept.push_back({rng.uniform(clipped.lo.x, clipped.hi.x), rng.uniform(clipped.lo.y, clipped.hi.y)});
        origin.push_back(-1);
        ++out.boxes_filled;
        continue;
      }
      if (box.size() > cap) {
        // Partial Fisher-Yates: the first `cap` slots become a uniform
        // sample without replacement; restore stored order afterwards.
        for (std::size_t k = 0; k < cap; ++k) {
          const std::size_t pick = k + static_cast<std::size_t>(rng.below(box.size() - k));
          std::swap(box[k], box[pick]);
        }
        box.resize(cap);
        std::sort(box.begin(), box.end());
        ++out.boxes_thinned;
      }
      for (const std::size_t i : box) {
        kept.push_back(points[i]);
        origin.push_back(static_cast<std::int64_t>(i));
      }
    }
  }

  const auto order = hilbert_order(kept, frame);
  std::vector<Point> sorted_points;
  sorted_points.reserve(order.size());
  out.origin.reserve(order.size());
  for (const std::size_t i : order) {
    sorted_points.push_back(kept[i]);
    out.origin.push_back(origin[i]);
  }
  out.points = PointSet::trusted(std::move(sorted_points), points.window());
  return out;
}

PointSet truncated_process(const PointSet& points, std::int64_t n, double delta, std::uint64_t seed) {
  return truncated_process_detailed(points, n, delta, seed).points;
}

}  // namespace fppdt
