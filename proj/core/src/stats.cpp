#include "fppdt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fppdt/error.hpp"

namespace fppdt {

Summary summarize(std::span<const double> xs) {
  Summary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (const double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  if (xs.size() >= 2) {
    double ss = 0.0;
    for (const double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.variance = ss / static_cast<double>(xs.size() - 1);
  }
  const double half = kZ95 * std::sqrt(s.variance / static_cast<double>(xs.size()));
  s.ci_low = s.mean - half;
  s.ci_high = s.mean + half;
  return s;
}

Summary summarize_proportion(std::size_t successes, std::size_t trials) {
  Summary s;
  s.count = trials;
  if (trials == 0) return s;
  const double m = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / m;
  s.mean = p;
  s.min = successes == trials ? 1.0 : 0.0;
  s.max = successes == 0 ? 0.0 : 1.0;
  s.variance = trials >= 2 ? p * (1.0 - p) * m / (m - 1.0) : 0.0;
  const double z2 = kZ95 * kZ95;
  const double centre = (p + z2 / (2 * m)) / (1 + z2 / m);
  const double half = kZ95 * std::sqrt(p * (1 - p) / m + z2 / (4 * m * m)) / (1 + z2 / m);
  // the Wilson interval touches 0 or 1 exactly at the extremes
  s.ci_low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  s.ci_high = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return s;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("line fit needs >= 2 paired points");
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("line fit needs at least two distinct x values");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - f.intercept - f.slope * x[i];
      rss += r * r;
    }
    f.slope_se = std::sqrt(rss / (m - 2.0) / sxx);
  }
  return f;
}

double quantile(std::span<const double> xs, double q) {
  if (xs.empty()) throw InvalidArgument("quantile of an empty sample");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

QuantileEstimate quantile_interval(std::span<const double> xs, double q) {
  if (xs.empty()) throw NumericError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile level must lie in [0, 1]");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const double m = static_cast<double>(v.size());
  const double spread = kZ95 * std::sqrt(m * q * (1.0 - q));
  const auto rank = [&](double x) { return static_cast<std::size_t>(std::clamp(x, 0.0, m - 1.0)); };
  return {quantile(v, q), v[rank(std::floor(m * q - spread))], v[rank(std::ceil(m * q + spread) - 1.0)]};
}

Correlation correlate(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("correlation needs paired samples");
  Correlation c;
  c.count = x.size();
  if (x.size() < 4) return c;
  const Summary sx = summarize(x);
  const Summary sy = summarize(y);
  if (sx.variance == 0.0 || sy.variance == 0.0) {
    c.r = 0.0;
  } else {
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - sx.mean) * (y[i] - sy.mean);
    c.r = std::clamp(sxy / static_cast<double>(x.size() - 1) / std::sqrt(sx.variance * sy.variance), -1.0, 1.0);
  }
  const double z = std::atanh(std::clamp(c.r, -0.999999, 0.999999));
  const double se = 1.0 / std::sqrt(static_cast<double>(x.size()) - 3.0);
  c.ci_low = std::tanh(z - kZ95 * se);
  c.ci_high = std::tanh(z + kZ95 * se);
  return c;
}

}  // namespace fppdt
