#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fppdt/delaunay.hpp"
#include "fppdt/renorm.hpp"
#include "fppdt/weights.hpp"

namespace fppdt {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);
/// 17 significant digits.
std::string format_double17(double x);
/// Strict parse of a whole string as a double.
double parse_double(const std::string& text);

/// "# window lo.x lo.y hi.x hi.y margin" followed by one "x y" line per point.
void write_points(std::ostream& out, const PointSet& points);
PointSet read_points(std::istream& in);

/// "# vertices N" followed by one "i j" line per Delaunay edge.
void write_graph(std::ostream& out, const DelaunayGraph& graph);
struct EdgeList {
  std::size_t vertices = 0;
  std::vector<Edge> edges;
};
EdgeList read_graph(std::istream& in);

/// One "i j tau" line per edge, tau with 17 significant digits.
void write_weights(std::ostream& out, const DelaunayGraph& graph, const EdgeWeights& weights);
/// Reads weights written for the same graph (edges in the graph's order).
EdgeWeights read_weights(std::istream& in, const DelaunayGraph& graph);

/// One "z.x z.y value" line per site.
void write_field(std::ostream& out, const SiteField& field);
/// Sites not listed are 0; the rectangle is the bounding box of the listed
/// sites and the origin.
SiteField read_field(std::istream& in);

}  // namespace fppdt
