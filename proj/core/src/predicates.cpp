#include "fppdt/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <gmpxx.h>

namespace fppdt::predicates {
namespace {

constexpr double kEpsilon = 0x1.0p-53;
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kIncircleBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

int sign_of(const mpq_class& v) { return sgn(v); }

int orient_exact(Point a, Point b, Point c) {
  const mpq_class acx = mpq_class(a.x) - mpq_class(c.x);
  const mpq_class bcx = mpq_class(b.x) - mpq_class(c.x);
  const mpq_class acy = mpq_class(a.y) - mpq_class(c.y);
  const mpq_class bcy = mpq_class(b.y) - mpq_class(c.y);
  return sign_of(acx * bcy - acy * bcx);
}

int incircle_exact(Point a, Point b, Point c, Point d) {
  const mpq_class dx(d.x);
  const mpq_class dy(d.y);
  const mpq_class adx = mpq_class(a.x) - dx;
  const mpq_class ady = mpq_class(a.y) - dy;
  const mpq_class bdx = mpq_class(b.x) - dx;
  const mpq_class bdy = mpq_class(b.y) - dy;
  const mpq_class cdx = mpq_class(c.x) - dx;
  const mpq_class cdy = mpq_class(c.y) - dy;
  const mpq_class alift = adx * adx + ady * ady;
  const mpq_class blift = bdx * bdx + bdy * bdy;
  const mpq_class clift = cdx * cdx + cdy * cdy;
  const mpq_class det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                        clift * (adx * bdy - bdx * ady);
  return sign_of(det);
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

int orient2d(Point a, Point b, Point c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  double detsum = 0.0;
  if (detleft > 0.0) {
    if (detright <= 0.0) return sign_of(det);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return sign_of(det);
    detsum = -detleft - detright;
  } else {
    // One factor of detleft is an exact zero or the product underflowed;
    // only the exact path is safe in the second case.
    return orient_exact(a, b, c);
  }
  const double bound = kOrientBound * detsum;
  if (det >= bound || -det >= bound) return sign_of(det);
  return orient_exact(a, b, c);
}

int incircle(Point a, Point b, Point c, Point d) {
  const double adx = a.x - d.x;
  const double bdx = b.x - d.x;
  const double cdx = c.x - d.x;
  const double ady = a.y - d.y;
  const double bdy = b.y - d.y;
  const double cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy;
  const double cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady;
  const double adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy;
  const double bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det =
      alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kIncircleBound * permanent;
  if (permanent > 0.0 && (det > bound || -det > bound)) return sign_of(det);
  return incircle_exact(a, b, c, d);
}

bool on_segment(Point a, Point b, Point c) {
  if (orient2d(a, b, c) != 0) return false;
  return c.x >= std::min(a.x, b.x) && c.x <= std::max(a.x, b.x) && c.y >= std::min(a.y, b.y) &&
         c.y <= std::max(a.y, b.y);
}

SegmentContact segment_contact(Point p, Point q, Point a, Point b) {
  const int o1 = orient2d(p, q, a);
  const int o2 = orient2d(p, q, b);
  const int o3 = orient2d(a, b, p);
  const int o4 = orient2d(a, b, q);
  if (o1 * o2 < 0 && o3 * o4 < 0) return SegmentContact::kProper;
  if ((o1 == 0 && on_segment(p, q, a)) || (o2 == 0 && on_segment(p, q, b)) ||
      (o3 == 0 && on_segment(a, b, p)) || (o4 == 0 && on_segment(a, b, q))) {
    return SegmentContact::kTouch;
  }
  return SegmentContact::kNone;
}

bool segment_meets_rect(Point p, Point q, const Rect& r) {
  if (r.contains(p) || r.contains(q)) return true;
  if (std::max(p.x, q.x) < r.lo.x || std::min(p.x, q.x) > r.hi.x || std::max(p.y, q.y) < r.lo.y ||
      std::min(p.y, q.y) > r.hi.y) {
    return false;
  }
  const Point c[4] = {r.lo, {r.hi.x, r.lo.y}, r.hi, {r.lo.x, r.hi.y}};
  for (int k = 0; k < 4; ++k) {
    if (segments_intersect(p, q, c[k], c[(k + 1) % 4])) return true;
  }
  return false;
}

}  // namespace fppdt::predicates
