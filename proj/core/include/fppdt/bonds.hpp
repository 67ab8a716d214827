#pragma once

#include <cstdint>
#include <vector>

#include "fppdt/voronoi.hpp"

namespace fppdt {

/// Open/closed marks on the bounded Voronoi edges, indexed by dual index.
class BondConfiguration {
 public:
  BondConfiguration() = default;
  explicit BondConfiguration(std::vector<char> open) : open_(std::move(open)) {}
  static BondConfiguration all(const VoronoiDiagram& diagram, bool open) {
    return BondConfiguration(std::vector<char>(diagram.dual_edge_count(), open ? 1 : 0));
  }

  std::size_t size() const { return open_.size(); }
  bool open(std::int32_t dual) const { return open_[static_cast<std::size_t>(dual)] != 0; }
  void set(std::int32_t dual, bool value) { open_[static_cast<std::size_t>(dual)] = value ? 1 : 0; }
  std::size_t open_count() const;

  friend bool operator==(const BondConfiguration&, const BondConfiguration&) = default;

 private:
  std::vector<char> open_;
};

inline std::size_t BondConfiguration::open_count() const {
  std::size_t c = 0;
  for (const char o : open_) c += o != 0;
  return c;
}

}  // namespace fppdt
