#include "fppdt/rng.hpp"

#include <cmath>

#include "fppdt/error.hpp"

namespace fppdt {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below: empty range");
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

double Rng::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

std::uint64_t Rng::poisson_small(double mean) {
  if (!(mean >= 0.0)) throw InvalidArgument("poisson mean must be nonnegative");
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double prod = uniform();
  while (prod > limit) {
    ++k;
    prod *= uniform();
  }
  return k;
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw InvalidArgument("poisson mean must be finite and nonnegative");
  }
  constexpr double kChunk = 16.0;
  std::uint64_t total = 0;
  while (mean > kChunk) {
    total += poisson_small(kChunk);
    mean -= kChunk;
  }
  return total + poisson_small(mean);
}

}  // namespace fppdt
