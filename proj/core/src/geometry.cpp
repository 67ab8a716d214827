#include "fppdt/geometry.hpp"

#include <algorithm>
#include <string>

namespace fppdt {

Window::Window(Point lo, Point hi, double margin) : lo_(lo), hi_(hi), margin_(margin) {
  if (!is_finite(lo) || !is_finite(hi) || !std::isfinite(margin)) {
    throw InvalidArgument("window coordinates must be finite");
  }
  if (!(hi.x > lo.x) || !(hi.y > lo.y)) {
    throw InvalidArgument("window must have positive width and height");
  }
  const double half_min_side = 0.5 * std::min(hi.x - lo.x, hi.y - lo.y);
  if (!(margin >= 0.0) || !(margin < half_min_side)) {
    throw InvalidArgument("window margin must lie in [0, min side / 2)");
  }
}

Window Window::square(double side) { return Window({0.0, 0.0}, {side, side}, side / 8.0); }

Window Window::centered(double side) {
  return Window({-0.5 * side, -0.5 * side}, {0.5 * side, 0.5 * side}, side / 8.0);
}

PointSet::PointSet(std::vector<Point> points, Window window, Unchecked)
    : points_(std::move(points)), window_(window) {
  for (const Point& p : points_) {
    if (!is_finite(p)) throw InvalidArgument("point coordinates must be finite");
    if (!window_.contains(p)) throw InvalidArgument("point outside window");
  }
}

PointSet::PointSet(std::vector<Point> points, Window window)
    : PointSet(std::move(points), window, Unchecked{}) {
  std::vector<Point> sorted(points_);
  std::sort(sorted.begin(), sorted.end(),
            [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("point set contains duplicate points");
  }
}

PointSet PointSet::trusted(std::vector<Point> points, Window window) {
  return PointSet(std::move(points), window, Unchecked{});
}

BoxGrid::BoxGrid(double scale, double halfwidth, Site first, Site last)
    : scale_(scale), halfwidth_(halfwidth), first_(first), last_(last) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("box scale must be positive");
  const double twice = 2.0 * halfwidth;
  if (!(halfwidth > 0.0) || twice != std::floor(twice)) {
    throw InvalidArgument("box half-width must be a positive multiple of 1/2");
  }
  if (last.x < first.x || last.y < first.y) throw InvalidArgument("empty box index range");
}

Rect BoxGrid::box(Site z, double halfwidth) const {
  const double cx = scale_ * z.x;
  const double cy = scale_ * z.y;
  const double h = halfwidth * scale_;
  return {{cx - h, cy - h}, {cx + h, cy + h}};
}

}  // namespace fppdt
