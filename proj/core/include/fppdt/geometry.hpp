#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fppdt/error.hpp"

namespace fppdt {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}
inline double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Closed axis-aligned rectangle [lo.x, hi.x] x [lo.y, hi.y].
struct Rect {
  Point lo;
  Point hi;

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
  Point center() const { return {0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)}; }
  bool contains(Point p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  bool strictly_contains(Point p) const {
    return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y;
  }
  bool contains(const Rect& r) const { return contains(r.lo) && contains(r.hi); }
  bool overlaps(const Rect& r) const {
    return lo.x <= r.hi.x && r.lo.x <= hi.x && lo.y <= r.hi.y && r.lo.y <= hi.y;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Simulation window: the finite stand-in for the plane. Points live in the
/// full rectangle; measurements are restricted to the rectangle shrunk by
/// `margin` on every side.
class Window {
 public:
  Window(Point lo, Point hi, double margin);

  /// [0, side]^2 with the default margin side / 8.
  static Window square(double side);
  /// [-side/2, side/2]^2 with the default margin side / 8.
  static Window centered(double side);

  Point lo() const { return lo_; }
  Point hi() const { return hi_; }
  double margin() const { return margin_; }
  Rect rect() const { return {lo_, hi_}; }
  Rect admissible() const {
    return {{lo_.x + margin_, lo_.y + margin_}, {hi_.x - margin_, hi_.y - margin_}};
  }
  double area() const { return (hi_.x - lo_.x) * (hi_.y - lo_.y); }
  bool contains(Point p) const { return rect().contains(p); }
  bool is_admissible(Point p) const { return admissible().contains(p); }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Point lo_;
  Point hi_;
  double margin_;
};

/// Finite planar configuration inside a window. Points are kept in their
/// stored order; that order is also the Delaunay insertion order.
class PointSet {
 public:
  /// Validates finiteness, window membership and distinctness.
  PointSet(std::vector<Point> points, Window window);

  /// Skips the distinctness scan (used by the samplers, which produce
  /// continuous coordinates).
  static PointSet trusted(std::vector<Point> points, Window window);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const { return points_; }
  const Window& window() const { return window_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  struct Unchecked {};
  PointSet(std::vector<Point> points, Window window, Unchecked);

  std::vector<Point> points_;
  Window window_;
};

/// Integer lattice site z in Z^2.
struct Site {
  int x = 0;
  int y = 0;
  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};

inline int linf_distance(Site a, Site b) {
  const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx > dy ? dx : dy;
}

/// Boxes r*z + [-s*r, s*r]^2 for z in an inclusive index rectangle.
/// With s = 1/2 the boxes tile the plane; with s > 1/2 they overlap.
class BoxGrid {
 public:
  BoxGrid(double scale, double halfwidth, Site first, Site last);

  double scale() const { return scale_; }
  double halfwidth() const { return halfwidth_; }
  Site first() const { return first_; }
  Site last() const { return last_; }
  int columns() const { return last_.x - first_.x + 1; }
  int rows() const { return last_.y - first_.y + 1; }
  std::size_t size() const {
    return static_cast<std::size_t>(columns()) * static_cast<std::size_t>(rows());
  }
  bool contains(Site z) const {
    return z.x >= first_.x && z.x <= last_.x && z.y >= first_.y && z.y <= last_.y;
  }
  std::size_t index(Site z) const {
    return static_cast<std::size_t>(z.y - first_.y) * static_cast<std::size_t>(columns()) +
           static_cast<std::size_t>(z.x - first_.x);
  }
  Site site(std::size_t index) const {
    const int cols = columns();
    return {first_.x + static_cast<int>(index % static_cast<std::size_t>(cols)),
            first_.y + static_cast<int>(index / static_cast<std::size_t>(cols))};
  }

  Rect box(Site z) const { return box(z, halfwidth_); }
  /// Box around z with a different half-width multiple (B_z^{s', r}).
  Rect box(Site z, double halfwidth) const;

 private:
  double scale_;
  double halfwidth_;
  Site first_;
  Site last_;
};

}  // namespace fppdt
