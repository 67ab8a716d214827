#include "fppdt/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fppdt {
namespace {

// Next line that is neither blank nor a comment other than the header.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    return true;
  }
  return false;
}

std::vector<std::string> fields(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

long parse_long(const std::string& text) {
  long v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw InvalidArgument("not an integer: '" + text + "'");
  }
  return v;
}

std::string read_header(std::istream& in, const std::string& tag) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::string prefix = "# " + tag;
    if (line.rfind(prefix, 0) != 0) throw InvalidArgument("expected a '" + prefix + "' header line");
    return line.substr(prefix.size());
  }
  throw InvalidArgument("missing '# " + tag + "' header line");
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::string format_double17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || end != last || first == last) throw InvalidArgument("not a number: '" + text + "'");
  return v;
}

void write_points(std::ostream& out, const PointSet& points) {
  const Window& w = points.window();
  out << "# window " << format_double(w.lo().x) << ' ' << format_double(w.lo().y) << ' '
      << format_double(w.hi().x) << ' ' << format_double(w.hi().y) << ' ' << format_double(w.margin()) << '\n';
  for (const Point p : points.points()) out << format_double(p.x) << ' ' << format_double(p.y) << '\n';
}

PointSet read_points(std::istream& in) {
  const auto head = fields(read_header(in, "window"));
  if (head.size() != 5) throw InvalidArgument("window header needs lo.x lo.y hi.x hi.y margin");
  const Window window({parse_double(head[0]), parse_double(head[1])}, {parse_double(head[2]), parse_double(head[3])},
                      parse_double(head[4]));
  std::vector<Point> pts;
  std::string line;
  while (next_data_line(in, line)) {
    const auto f = fields(line);
    if (f.size() != 2) throw InvalidArgument("point line needs two coordinates: '" + line + "'");
    pts.push_back({parse_double(f[0]), parse_double(f[1])});
  }
  return PointSet(std::move(pts), window);
}

void write_graph(std::ostream& out, const DelaunayGraph& graph) {
  out << "# vertices " << graph.vertices().size() << '\n';
  for (const Edge e : graph.edges()) out << e.a << ' ' << e.b << '\n';
}

EdgeList read_graph(std::istream& in) {
  const auto head = fields(read_header(in, "vertices"));
  if (head.size() != 1) throw InvalidArgument("vertices header needs a count");
  const long n = parse_long(head[0]);
  if (n < 0) throw InvalidArgument("negative vertex count");
  EdgeList out{static_cast<std::size_t>(n), {}};
  std::string line;
  while (next_data_line(in, line)) {
    const auto f = fields(line);
    if (f.size() != 2) throw InvalidArgument("edge line needs two vertex ids: '" + line + "'");
    const long a = parse_long(f[0]);
    const long b = parse_long(f[1]);
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw InvalidArgument("bad edge '" + line + "'");
    out.edges.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b)});
  }
  return out;
}

void write_weights(std::ostream& out, const DelaunayGraph& graph, const EdgeWeights& weights) {
  check_weights(graph, weights);
  const auto edges = graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << edges[i].a << ' ' << edges[i].b << ' ' << format_double17(weights.values()[i]) << '\n';
  }
}

EdgeWeights read_weights(std::istream& in, const DelaunayGraph& graph) {
  const auto edges = graph.edges();
  std::vector<double> values;
  values.reserve(edges.size());
  std::string line;
  while (next_data_line(in, line)) {
    const auto f = fields(line);
    if (f.size() != 3) throw InvalidArgument("weight line needs 'i j tau': '" + line + "'");
    const std::size_t k = values.size();
    if (k >= edges.size() || parse_long(f[0]) != edges[k].a || parse_long(f[1]) != edges[k].b) {
      throw InvalidArgument("weight file does not follow the graph's edge order");
    }
    values.push_back(parse_double(f[2]));
  }
  if (values.size() != edges.size()) throw InvalidArgument("weight file has the wrong number of edges");
  return EdgeWeights(std::move(values));
}

void write_field(std::ostream& out, const SiteField& field) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    const Site z = field.site(i);
    out << z.x << ' ' << z.y << ' ' << format_double(field.values()[i]) << '\n';
  }
}

SiteField read_field(std::istream& in) {
  std::map<Site, double> values;
  Site lo{0, 0};
  Site hi{0, 0};
  std::string line;
  while (next_data_line(in, line)) {
    const auto f = fields(line);
    if (f.size() != 3) throw InvalidArgument("field line needs 'z.x z.y value': '" + line + "'");
    const Site z{static_cast<int>(parse_long(f[0])), static_cast<int>(parse_long(f[1]))};
    if (!values.emplace(z, parse_double(f[2])).second) throw InvalidArgument("site listed twice: '" + line + "'");
    lo = {std::min(lo.x, z.x), std::min(lo.y, z.y)};
    hi = {std::max(hi.x, z.x), std::max(hi.y, z.y)};
  }
  SiteField field = SiteField::constant(lo, hi, 0.0);
  for (const auto& [z, v] : values) field.set(z, v);
  return SiteField(lo, hi, {field.values().begin(), field.values().end()});
}

}  // namespace fppdt
