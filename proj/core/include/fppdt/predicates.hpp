#pragma once

#include "fppdt/geometry.hpp"

// Exact geometric predicates on double coordinates. A floating-point filter
// with a static error bound answers almost every query; the rest are
// re-evaluated in exact rational arithmetic.
namespace fppdt::predicates {

/// +1 if (a, b, c) turns counter-clockwise, -1 if clockwise, 0 if collinear.
int orient2d(Point a, Point b, Point c);

/// +1 if d is strictly inside the circle through a, b, c (taken
/// counter-clockwise), -1 if strictly outside, 0 if cocircular.
int incircle(Point a, Point b, Point c, Point d);

/// Relationship between two closed segments.
enum class SegmentContact {
  kNone,    ///< disjoint
  kProper,  ///< cross at a single point interior to both
  kTouch,   ///< intersect, but at an endpoint or collinearly
};

SegmentContact segment_contact(Point p, Point q, Point a, Point b);

inline bool segments_intersect(Point p, Point q, Point a, Point b) {
  return segment_contact(p, q, a, b) != SegmentContact::kNone;
}

/// True when c lies on the closed segment [a, b] (exact).
bool on_segment(Point a, Point b, Point c);

/// True when the closed segment [p, q] meets the closed rectangle r (exact).
bool segment_meets_rect(Point p, Point q, const Rect& r);

}  // namespace fppdt::predicates
