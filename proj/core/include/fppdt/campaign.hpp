#pragma once

#include <cstdint>
#include <vector>

#include "fppdt/rng.hpp"

namespace fppdt {

/// Settings shared by every Monte Carlo campaign.
struct CampaignSetup {
  std::size_t replicas = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  double intensity = 1.0;
  /// Window side; 0 selects the campaign's default.
  double side = 0.0;
  /// Reuse replica 0's point stream in every replica (fixed geometry).
  bool freeze_points = false;
};

/// Per-replica RNG seeds, one stream per randomness source.
struct ReplicaSeeds {
  std::uint64_t points = 0;
  std::uint64_t weights = 0;
  std::uint64_t bonds = 0;
};

inline ReplicaSeeds replica_seeds(const CampaignSetup& setup, std::size_t replica) {
  const std::uint64_t r = replica;
  return {derive_seed(setup.seed, setup.freeze_points ? 0 : r, "points"),
          derive_seed(setup.seed, r, "weights"), derive_seed(setup.seed, r, "bonds")};
}

/// Throws InvalidArgument for an unusable setup (zero replicas, bad intensity...).
void check_setup(const CampaignSetup& setup, std::size_t min_replicas = 1);

}  // namespace fppdt
