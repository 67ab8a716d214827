#pragma once

#include <vector>

#include "fppdt/delaunay.hpp"
#include "fppdt/point_process.hpp"
#include "fppdt/voronoi.hpp"

namespace testing_support {

inline fppdt::PointSet square_points(std::size_t n, double side, std::uint64_t seed) {
  return fppdt::sample_uniform(fppdt::Window::square(side), n, seed);
}

inline fppdt::PointSet explicit_points(std::vector<fppdt::Point> pts, double lo = -10.0, double hi = 10.0) {
  return fppdt::PointSet(std::move(pts), fppdt::Window({lo, lo}, {hi, hi}, 0.0));
}

inline std::vector<fppdt::Edge> edge_list(const fppdt::DelaunayGraph& g) {
  return {g.edges().begin(), g.edges().end()};
}

}  // namespace testing_support
