#pragma once

#include <cstddef>
#include <span>

namespace fppdt {

/// Sample summary with a normal-approximation 95% interval for the mean.
struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased; 0 when count < 2
  double ci_low = 0.0;
  double ci_high = 0.0;
  double min = 0.0;
  double max = 0.0;

  double half_width() const { return 0.5 * (ci_high - ci_low); }
};

inline constexpr double kZ95 = 1.959963984540054;

/// Two-pass mean and variance; the interval is mean +/- 1.96 s / sqrt(m).
Summary summarize(std::span<const double> xs);

/// Wilson score interval for k successes in m trials.
Summary summarize_proportion(std::size_t successes, std::size_t trials);

/// Ordinary least squares y = intercept + slope x with the residual
/// standard error of the slope (0 with fewer than 3 points).
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::span<const double> xs, double q);

/// Sample quantile with a distribution-free 95% interval from the binomial
/// ranks of the order statistics.
struct QuantileEstimate {
  double value = 0.0;
  double low = 0.0;
  double high = 0.0;
};
QuantileEstimate quantile_interval(std::span<const double> xs, double q);

/// Pearson correlation with a Fisher-z 95% interval.
struct Correlation {
  double r = 0.0;
  double ci_low = -1.0;
  double ci_high = 1.0;
  std::size_t count = 0;
};
Correlation correlate(std::span<const double> x, std::span<const double> y);

}  // namespace fppdt
