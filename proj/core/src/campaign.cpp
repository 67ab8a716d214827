#include "fppdt/campaign.hpp"

#include <cmath>
#include <string>

#include "fppdt/error.hpp"

namespace fppdt {

void check_setup(const CampaignSetup& setup, std::size_t min_replicas) {
  if (setup.replicas < min_replicas) {
    throw InvalidArgument("at least " + std::to_string(min_replicas) + " replica(s) required");
  }
  if (!(setup.intensity > 0.0) || !std::isfinite(setup.intensity)) {
    throw InvalidArgument("intensity must be positive");
  }
  if (!(setup.side >= 0.0) || !std::isfinite(setup.side)) throw InvalidArgument("window side must be >= 0");
}

}  // namespace fppdt
