#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fppdt {

/// splitmix64 finalizer: xor-shift / multiply, twice, then a final shift.
/// A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 64-bit FNV-1a of a short label.
constexpr std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed of the RNG stream `label` for replica `replica` of a campaign run
/// with `master`. The word master ^ fnv1a(label) ^ replica is passed through
/// mix64 twice. For fixed (master, label) the map replica -> seed is a
/// bijection, so distinct replicas never share a stream.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replica,
                                    std::string_view label) {
  return mix64(mix64(master ^ hash_label(label) ^ replica));
}

/// Uniform in [0, 1) with 53 random bits.
inline double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Thin wrapper over mt19937_64 with portable, implementation-independent
/// variate transforms (the <random> distributions are not specified bit for
/// bit across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform() { return unit_uniform(engine_()); }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double exponential(double rate);
  /// Knuth's product method; intended for small means (a few tens at most).
  std::uint64_t poisson_small(double mean);
  /// Poisson variate for any mean: split into chunks of mean <= 16.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fppdt
