#include "fppdt/renorm.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "fppdt/parallel.hpp"
#include "fppdt/point_process.hpp"
#include "fppdt/predicates.hpp"

namespace fppdt {
namespace {

constexpr int kSubBoxes = 6;

// Closed sub-box bounds; the last bound is the box side itself so that
// rounding never opens a gap at the far edge.
double sub_bound(double lo, double hi, int i) {
  return i == kSubBoxes ? hi : lo + (hi - lo) * static_cast<double>(i) / kSubBoxes;
}

// Connected sets through the origin inside the field rectangle, each
// generated once (Redelmeier). visit(cells) sees every set of at most
// max_size sites and returns whether to extend it.
template <class Visit>
class AnimalWalker {
 public:
  AnimalWalker(const SiteField& domain, int max_size, Visit& visit)
      : domain_(domain), max_size_(static_cast<std::size_t>(max_size)), visit_(visit), seen_(domain.size(), 0) {}

  void run() {
    if (!domain_.contains({0, 0})) throw InvalidArgument("the field rectangle must contain the origin");
    const auto root = static_cast<int>(domain_.index({0, 0}));
    seen_[static_cast<std::size_t>(root)] = 1;
    extend({root});
  }

 private:
  void extend(std::vector<int> untried) {
    while (!untried.empty()) {
      const int v = untried.back();
      untried.pop_back();
      cells_.push_back(v);
      if (visit_(static_cast<const std::vector<int>&>(cells_)) && cells_.size() < max_size_) {
        std::vector<int> next = untried;
        const Site z = domain_.site(static_cast<std::size_t>(v));
        const Site around[4] = {{z.x + 1, z.y}, {z.x - 1, z.y}, {z.x, z.y + 1}, {z.x, z.y - 1}};
        const std::size_t mark = next.size();
        for (const Site w : around) {
          if (!domain_.contains(w)) continue;
          const std::size_t i = domain_.index(w);
          if (seen_[i]) continue;
          seen_[i] = 1;
          next.push_back(static_cast<int>(i));
        }
        const std::vector<int> added(next.begin() + static_cast<std::ptrdiff_t>(mark), next.end());
        extend(std::move(next));
        for (const int i : added) seen_[static_cast<std::size_t>(i)] = 0;
      }
      cells_.pop_back();
    }
  }

  const SiteField& domain_;
  std::size_t max_size_;
  Visit& visit_;
  std::vector<char> seen_;
  std::vector<int> cells_;
};

template <class Visit>
void walk_animals(const SiteField& domain, int max_size, Visit visit) {
  AnimalWalker<Visit> walker(domain, max_size, visit);
  walker.run();
}

Animal to_animal(const SiteField& field, const std::vector<int>& cells) {
  Animal a;
  a.reserve(cells.size());
  for (const int i : cells) a.push_back(field.site(static_cast<std::size_t>(i)));
  std::sort(a.begin(), a.end());
  return a;
}

double animal_sum(const SiteField& field, const Animal& a) {
  double s = 0.0;
  for (const Site z : a) s += field[z];
  return s;
}

bool is_adjacent(Site a, Site b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1; }

bool connected(const Animal& a) {
  if (a.empty()) return false;
  std::vector<char> reached(a.size(), 0);
  std::vector<std::size_t> stack{0};
  reached[0] = 1;
  std::size_t n = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!reached[j] && is_adjacent(a[i], a[j])) {
        reached[j] = 1;
        ++n;
        stack.push_back(j);
      }
    }
  }
  return n == a.size();
}

std::vector<Site> boundary(const SiteField& field, const Animal& a) {
  std::set<Site> out;
  for (const Site z : a) {
    const Site around[4] = {{z.x + 1, z.y}, {z.x - 1, z.y}, {z.x, z.y + 1}, {z.x, z.y - 1}};
    for (const Site w : around) {
      if (field.contains(w) && !std::binary_search(a.begin(), a.end(), w)) out.insert(w);
    }
  }
  return {out.begin(), out.end()};
}

AnimalResult heuristic_animal(const SiteField& field, int s) {
  Animal a{{0, 0}};
  while (static_cast<int>(a.size()) < s) {
    const auto ring = boundary(field, a);
    if (ring.empty()) break;
    const Site* best = &ring.front();
    for (const Site& w : ring) {
      if (field[w] > field[*best]) best = &w;
    }
    a.insert(std::upper_bound(a.begin(), a.end(), *best), *best);
  }
  // Improving single-site swaps; the origin stays.
  double value = animal_sum(field, a);
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i < a.size() && !improved; ++i) {
      if (a[i] == Site{0, 0}) continue;
      Animal rest = a;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      if (!connected(rest)) continue;
      for (const Site w : boundary(field, rest)) {
        if (w == a[i] || !(field[w] > field[a[i]])) continue;
        Animal next = rest;
        next.insert(std::upper_bound(next.begin(), next.end(), w), w);
        a = std::move(next);
        value = animal_sum(field, a);
        improved = true;
        break;
      }
    }
  }
  return {value, a, false};
}

bool inside_circuit(const std::vector<Site>& doubled, long px, long py) {
  bool in = false;
  for (std::size_t i = 0; i < doubled.size(); ++i) {
    const Site a = doubled[i];
    const Site b = doubled[(i + 1) % doubled.size()];
    if ((a.y > py) != (b.y > py) && a.x > px) in = !in;  // only vertical edges qualify
  }
  return in;
}

bool overlaps_with_area(const Polygon& cell, const Rect& r, double tol) {
  Polygon p = clip_halfplane(cell, {0.0, 0.0}, {1.0, 0.0}, r.hi.x);
  p = clip_halfplane(p, {0.0, 0.0}, {-1.0, 0.0}, -r.lo.x);
  p = clip_halfplane(p, {0.0, 0.0}, {0.0, 1.0}, r.hi.y);
  p = clip_halfplane(p, {0.0, 0.0}, {0.0, -1.0}, -r.lo.y);
  return p.size() >= 3 && std::abs(polygon_area(p)) > tol;
}

}  // namespace

bool is_full_box(const Rect& box, std::span<const Point> points) {
  if (!(box.width() > 0.0) || !(box.height() > 0.0)) return false;
  std::array<bool, kSubBoxes * kSubBoxes> hit{};
  int filled = 0;
  for (const Point p : points) {
    if (!box.contains(p)) continue;
    const int gx = std::clamp(static_cast<int>((p.x - box.lo.x) / box.width() * kSubBoxes), 0, kSubBoxes - 1);
    const int gy = std::clamp(static_cast<int>((p.y - box.lo.y) / box.height() * kSubBoxes), 0, kSubBoxes - 1);
    for (int i = std::max(0, gx - 1); i <= std::min(kSubBoxes - 1, gx + 1); ++i) {
      if (p.x < sub_bound(box.lo.x, box.hi.x, i) || p.x > sub_bound(box.lo.x, box.hi.x, i + 1)) continue;
      for (int j = std::max(0, gy - 1); j <= std::min(kSubBoxes - 1, gy + 1); ++j) {
        if (p.y < sub_bound(box.lo.y, box.hi.y, j) || p.y > sub_bound(box.lo.y, box.hi.y, j + 1)) continue;
        auto& slot = hit[static_cast<std::size_t>(j * kSubBoxes + i)];
        if (!slot) {
          slot = true;
          if (++filled == kSubBoxes * kSubBoxes) return true;
        }
      }
    }
  }
  return false;
}

BoxOccupancy box_occupancy(const BoxGrid& grid, std::span<const Point> points) {
  std::vector<std::vector<Point>> members(grid.size());
  const double r = grid.scale();
  const double s = grid.halfwidth();
  const int reach = static_cast<int>(std::ceil(s)) + 1;
  for (const Point p : points) {
    const int cx = static_cast<int>(std::floor(p.x / r + 0.5));
    const int cy = static_cast<int>(std::floor(p.y / r + 0.5));
    for (int x = std::max(cx - reach, grid.first().x); x <= std::min(cx + reach, grid.last().x); ++x) {
      for (int y = std::max(cy - reach, grid.first().y); y <= std::min(cy + reach, grid.last().y); ++y) {
        if (grid.box({x, y}).contains(p)) members[grid.index({x, y})].push_back(p);
      }
    }
  }
  BoxOccupancy out{std::vector<char>(grid.size(), 0), std::vector<std::size_t>(grid.size(), 0)};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.count[i] = members[i].size();
    out.full[i] = is_full_box(grid.box(grid.site(i)), members[i]) ? 1 : 0;
  }
  return out;
}

SiteField::SiteField(Site first, Site last, std::vector<double> values)
    : first_(first), last_(last), values_(std::move(values)) {
  if (last.x < first.x || last.y < first.y) throw InvalidArgument("site field range is empty");
  if (values_.size() != static_cast<std::size_t>(columns()) * static_cast<std::size_t>(rows())) {
    throw InvalidArgument("site field has the wrong number of values");
  }
  for (const double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("site values must be finite and nonnegative");
  }
}

SiteField SiteField::constant(Site first, Site last, double value) {
  const auto n = static_cast<std::size_t>(std::max(0, last.x - first.x + 1)) *
                 static_cast<std::size_t>(std::max(0, last.y - first.y + 1));
  return SiteField(first, last, std::vector<double>(n, value));
}

AnimalResult greedy_animal(const SiteField& field, int s, AnimalMode mode) {
  if (s < 1) throw InvalidArgument("animal size must be positive");
  if (!field.contains({0, 0})) throw InvalidArgument("the field rectangle must contain the origin");
  if (mode == AnimalMode::kHeuristic) return heuristic_animal(field, s);
  if (s > kMaxExactAnimal) {
    throw BoundExceeded("exact animal enumeration is limited to s <= " + std::to_string(kMaxExactAnimal));
  }
  const auto vals = field.values();
  const double top = *std::max_element(vals.begin(), vals.end());
  // Seed with the heuristic so the bound prunes from the start.
  AnimalResult best = heuristic_animal(field, s);
  best.exact = true;
  std::vector<int> best_cells;
  walk_animals(field, s, [&](const std::vector<int>& cells) {
    double sum = 0.0;
    for (const int i : cells) sum += vals[static_cast<std::size_t>(i)];
    if (sum > best.value) {
      best.value = sum;
      best_cells = cells;
    }
    return sum + static_cast<double>(s - static_cast<int>(cells.size())) * top > best.value;
  });
  if (!best_cells.empty()) best.witness = to_animal(field, best_cells);
  return best;
}

void for_each_animal(const SiteField& domain, int size, const std::function<bool(const Animal&)>& visit) {
  if (size < 1) throw InvalidArgument("animal size must be positive");
  bool stop = false;
  walk_animals(domain, size, [&](const std::vector<int>& cells) {
    if (stop) return false;
    if (static_cast<int>(cells.size()) == size && !visit(to_animal(domain, cells))) stop = true;
    return !stop;
  });
}

std::size_t max_separated_subset(std::span<const Site> sites, int k) {
  if (k < 1) throw InvalidArgument("separation k must be at least 1");
  if (sites.size() > 25) throw BoundExceeded("separated-subset search is limited to 25 sites");
  const std::size_t n = sites.size();
  std::vector<std::uint32_t> conflict(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && linf_distance(sites[i], sites[j]) < k) conflict[i] |= 1u << j;
    }
  }
  std::size_t best = 0;
  auto search = [&](auto&& self, std::uint32_t candidates, std::size_t size) -> void {
    if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
    if (candidates == 0) {
      best = size;
      return;
    }
    const int i = std::countr_zero(candidates);
    const std::uint32_t bit = 1u << i;
    self(self, candidates & ~bit & ~conflict[static_cast<std::size_t>(i)], size + 1);
    self(self, candidates & ~bit, size);
  };
  const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1u;
  search(search, all, 0);
  return best;
}

DensityResult open_density(const SiteField& open, int s, int k) {
  if (s < 1) throw InvalidArgument("animal size must be positive");
  if (k < 1) throw InvalidArgument("separation k must be at least 1");
  if (s > kMaxDensityAnimal) {
    throw BoundExceeded("open density is limited to s <= " + std::to_string(kMaxDensityAnimal));
  }
  if (open.columns() > kMaxDensityGrid || open.rows() > kMaxDensityGrid) {
    throw BoundExceeded("open density is limited to a 7 x 7 field");
  }
  const auto vals = open.values();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<int> best_cells;
  std::vector<Site> open_sites;
  walk_animals(open, s, [&](const std::vector<int>& cells) {
    open_sites.clear();
    for (const int i : cells) {
      if (vals[static_cast<std::size_t>(i)] != 0.0) open_sites.push_back(open.site(static_cast<std::size_t>(i)));
    }
    const std::size_t m = max_separated_subset(open_sites, k);
    // Growing an animal never lowers its separated count.
    if (m >= best) return false;
    if (static_cast<int>(cells.size()) == s) {
      best = m;
      best_cells = cells;
      return false;
    }
    return true;
  });
  if (best_cells.empty()) throw InvalidArgument("no animal of the requested size fits in the field");
  return {best, to_animal(open, best_cells)};
}

void validate_circuit(const BoxCircuit& circuit) {
  const auto& z = circuit.sites;
  if (!(circuit.scale > 0.0) || !std::isfinite(circuit.scale)) throw InvalidArgument("circuit scale must be positive");
  if (z.size() < 4) throw InvalidArgument("a lattice circuit needs at least four sites");
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!is_adjacent(z[i], z[(i + 1) % z.size()])) {
      throw InvalidArgument("circuit sites " + std::to_string(i) + " and its successor are not neighbours");
    }
  }
  std::vector<Site> sorted = z;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("circuit visits a site twice");
  }
}

bool circuit_separation_check(const BoxCircuit& circuit, const PointSet& points, const VoronoiDiagram& diagram) {
  validate_circuit(circuit);
  Site lo = circuit.sites.front();
  Site hi = circuit.sites.front();
  for (const Site z : circuit.sites) {
    lo = {std::min(lo.x, z.x), std::min(lo.y, z.y)};
    hi = {std::max(hi.x, z.x), std::max(hi.y, z.y)};
  }
  const BoxGrid grid(circuit.scale, 0.5, lo, hi);
  const BoxOccupancy occ = box_occupancy(grid, points.points());
  for (const Site z : circuit.sites) {
    if (!occ.full[grid.index(z)]) throw PreconditionError("circuit box is not full");
  }
  return separation_holds(circuit, diagram);
}

bool separation_holds(const BoxCircuit& circuit, const VoronoiDiagram& diagram) {
  validate_circuit(circuit);
  if (!diagram.has_cells()) throw InvalidArgument("separation check needs a diagram built with cells");
  const double r = circuit.scale;
  const auto& sites = circuit.sites;
  Site lo = sites.front();
  Site hi = sites.front();
  for (const Site z : sites) {
    lo = {std::min(lo.x, z.x), std::min(lo.y, z.y)};
    hi = {std::max(hi.x, z.x), std::max(hi.y, z.y)};
  }
  const BoxGrid grid(r, 0.5, lo, hi);
  std::vector<char> on_circuit(grid.size(), 0);
  for (const Site z : sites) on_circuit[grid.index(z)] = 1;

  std::vector<Site> doubled;
  doubled.reserve(sites.size());
  for (const Site z : sites) doubled.push_back({2 * z.x, 2 * z.y});
  auto site_inside = [&](Site z) {
    if (!grid.contains(z)) return false;
    return inside_circuit(doubled, 2L * z.x, 2L * z.y);
  };
  auto is_circuit = [&](Site z) { return grid.contains(z) && on_circuit[grid.index(z)]; };
  // Cell [r z, r (z + 1)]^2 of the polygon's lattice, classified by its centre.
  auto square_inside = [&](Site z) { return inside_circuit(doubled, 2L * z.x + 1, 2L * z.y + 1); };

  const double tol = 1e-12 * r * r;
  for (std::size_t v = 0; v < diagram.delaunay().vertices().size(); ++v) {
    const Polygon& cell = diagram.cell(static_cast<VertexId>(v));
    if (cell.size() < 3) continue;
    double x0 = cell[0].x, x1 = cell[0].x, y0 = cell[0].y, y1 = cell[0].y;
    for (const Point p : cell) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    // Skip cells far from the circuit's boxes: they meet neither inside region.
    if (x1 < r * (lo.x - 1) || x0 > r * (hi.x + 1) || y1 < r * (lo.y - 1) || y0 > r * (hi.y + 1)) continue;
    bool box_in = false, box_out = false, poly_in = false, poly_out = false;
    for (int x = static_cast<int>(std::floor(x0 / r + 0.5)); x <= static_cast<int>(std::ceil(x1 / r - 0.5)); ++x) {
      for (int y = static_cast<int>(std::floor(y0 / r + 0.5)); y <= static_cast<int>(std::ceil(y1 / r - 0.5)); ++y) {
        const Site z{x, y};
        if (is_circuit(z)) continue;
        const Rect b{{r * (x - 0.5), r * (y - 0.5)}, {r * (x + 0.5), r * (y + 0.5)}};
        if (!overlaps_with_area(cell, b, tol)) continue;
        (site_inside(z) ? box_in : box_out) = true;
      }
    }
    for (int x = static_cast<int>(std::floor(x0 / r)); x <= static_cast<int>(std::ceil(x1 / r)); ++x) {
      for (int y = static_cast<int>(std::floor(y0 / r)); y <= static_cast<int>(std::ceil(y1 / r)); ++y) {
        const Rect b{{r * x, r * y}, {r * (x + 1), r * (y + 1)}};
        if (!overlaps_with_area(cell, b, tol)) continue;
        (square_inside({x, y}) ? poly_in : poly_out) = true;
      }
    }
    if ((box_in && poly_out) || (box_out && poly_in)) return false;
  }
  return true;
}

std::vector<Site> rectangle_circuit(Site corner, int width, int height) {
  if (width < 1 || height < 1) throw InvalidArgument("rectangle circuit needs positive sides");
  std::vector<Site> out;
  for (int i = 0; i < width; ++i) out.push_back({corner.x + i, corner.y});
  for (int j = 0; j < height; ++j) out.push_back({corner.x + width, corner.y + j});
  for (int i = width; i > 0; --i) out.push_back({corner.x + i, corner.y + height});
  for (int j = height; j > 0; --j) out.push_back({corner.x, corner.y + j});
  return out;
}

SeparationResult separation_campaign(const SeparationParams& params, const CampaignSetup& setup) {
  check_setup(setup);
  if (!(params.L > 0.0) || !std::isfinite(params.L)) throw InvalidArgument("circuit scale L must be positive");
  if (params.max_extent < 1) throw InvalidArgument("max_extent must be at least 1");
  SeparationResult out;
  out.params = params;
  out.instances.resize(setup.replicas);
  parallel_for(setup.replicas, setup.threads, [&](std::size_t rep) {
    Rng rng(derive_seed(setup.seed, rep, "circuit"));
    SeparationInstance& inst = out.instances[rep];
    inst.replica = rep;
    inst.width = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_extent)));
    inst.height = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_extent)));
    inst.corner = {static_cast<int>(rng.below(5)) - 2, static_cast<int>(rng.below(5)) - 2};
    const double L = params.L;
    // Two rings of boxes around the circuit plus a margin of one box.
    const Window window({L * (inst.corner.x - 3.5), L * (inst.corner.y - 3.5)},
                        {L * (inst.corner.x + inst.width + 3.5), L * (inst.corner.y + inst.height + 3.5)}, L);
    const PointSet points = sample_poisson(window, setup.intensity, replica_seeds(setup, rep).points);
    inst.points = points.size();
    const BoxCircuit circuit{rectangle_circuit(inst.corner, inst.width, inst.height), L};
    if (points.size() < 3) return;
    const Tessellation tess(points);
    try {
      inst.separated = circuit_separation_check(circuit, points, tess.diagram());
      inst.full = true;
    } catch (const PreconditionError&) {
      inst.full = false;
    }
  });
  for (const auto& inst : out.instances) {
    if (!inst.full) continue;
    ++out.checked;
    if (inst.separated) ++out.passed;
  }
  return out;
}

SiteDistribution SiteDistribution::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw InvalidArgument("Poisson mean must be nonnegative");
  return {Kind::kPoisson, mean};
}

SiteDistribution SiteDistribution::parse(std::string_view text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string_view::npos || close != text.size() - 1 || close <= open + 1) {
    throw InvalidArgument("site distribution must look like name(value): '" + std::string(text) + "'");
  }
  const std::string_view name = text.substr(0, open);
  const std::string_view arg = text.substr(open + 1, close - open - 1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
  if (ec != std::errc() || end != arg.data() + arg.size() || !std::isfinite(value)) {
    throw InvalidArgument("bad site distribution parameter '" + std::string(arg) + "'");
  }
  if (name == "constant") {
    if (value < 0.0) throw InvalidArgument("constant site value must be nonnegative");
    return constant(value);
  }
  if (name == "poisson") return poisson(value);
  if (name == "bernoulli") {
    if (value < 0.0 || value > 1.0) throw InvalidArgument("bernoulli parameter must lie in [0, 1]");
    return {Kind::kBernoulli, value};
  }
  if (name == "exponential") {
    if (!(value > 0.0)) throw InvalidArgument("exponential rate must be positive");
    return {Kind::kExponential, value};
  }
  throw InvalidArgument("unknown site distribution '" + std::string(name) + "'");
}

double SiteDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::kConstant: return param_;
    case Kind::kPoisson: return static_cast<double>(rng.poisson(param_));
    case Kind::kBernoulli: return rng.uniform() < param_ ? 1.0 : 0.0;
    case Kind::kExponential: return rng.exponential(param_);
  }
  return 0.0;
}

std::string SiteDistribution::to_string() const {
  const char* names[] = {"constant", "poisson", "bernoulli", "exponential"};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, param_);
  return std::string(names[static_cast<int>(kind_)]) + "(" + std::string(buf, res.ptr) + ")";
}

AnimalGrowthResult animal_growth_scan(const SiteDistribution& dist, const std::vector<int>& s_grid,
                                      const CampaignSetup& setup) {
  check_setup(setup);
  if (s_grid.empty()) throw InvalidArgument("empty s grid");
  for (const int s : s_grid) {
    if (s < 1) throw InvalidArgument("animal size must be positive");
    if (s > kMaxExactAnimal) throw BoundExceeded("animal scan is exact and limited to s <= 12");
  }
  const int s_max = *std::max_element(s_grid.begin(), s_grid.end());
  const Site first{-(s_max - 1), -(s_max - 1)};
  const Site last{s_max - 1, s_max - 1};
  const auto sites = static_cast<std::size_t>(2 * s_max - 1) * static_cast<std::size_t>(2 * s_max - 1);

  AnimalGrowthResult out;
  out.s_grid = s_grid;
  out.values.assign(setup.replicas, std::vector<double>(s_grid.size(), 0.0));
  parallel_for(setup.replicas, setup.threads, [&](std::size_t rep) {
    Rng rng(derive_seed(setup.seed, rep, "field"));
    std::vector<double> values(sites);
    for (double& v : values) v = dist.sample(rng);
    const SiteField field(first, last, std::move(values));
    for (std::size_t j = 0; j < s_grid.size(); ++j) {
      out.values[rep][j] = greedy_animal(field, s_grid[j], AnimalMode::kExact).value;
    }
  });
  std::vector<double> maxima;
  for (std::size_t j = 0; j < s_grid.size(); ++j) {
    std::vector<double> ratio;
    ratio.reserve(setup.replicas);
    for (const auto& row : out.values) ratio.push_back(row[j] / s_grid[j]);
    const Summary sum = summarize(ratio);
    out.rows.push_back({s_grid[j], sum, quantile(ratio, 0.99)});
    maxima.push_back(sum.max);
  }
  if (maxima.size() >= 2) {
    const double a = maxima[maxima.size() - 2];
    const double b = maxima.back();
    out.stabilizes = std::abs(b - a) <= 0.1 * std::max(std::abs(a), std::abs(b)) ||
                     (a == 0.0 && b == 0.0);
  }
  return out;
}

GoodBoxProbeResult good_box_density_probe(const GoodBoxProbeParams& params, const CampaignSetup& setup) {
  check_setup(setup);
  if (params.L_grid.empty()) throw InvalidArgument("empty L grid");
  if (params.grid < 1) throw InvalidArgument("probe grid needs at least one site");
  if (params.dependence < 1) throw InvalidArgument("dependence distance must be positive");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw InvalidArgument("bond probability must lie in [0, 1]");
  for (const double L : params.L_grid) {
    if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("box scale L must be positive");
  }
  GoodBoxProbeResult out;
  out.params = params;
  const int G = params.grid;
  const Site first{0, 0};
  const Site last{G - 1, G - 1};
  for (const double L : params.L_grid) {
    std::vector<std::vector<char>> good(setup.replicas);
    parallel_for(setup.replicas, setup.threads, [&](std::size_t rep) {
      const ReplicaSeeds seeds = replica_seeds(setup, rep);
      // Three rings of boxes beyond the grid cover every neighbourhood read.
      const Window window({L * (first.x - 3.5), L * (first.y - 3.5)}, {L * (last.x + 3.5), L * (last.y + 3.5)}, L);
      const PointSet points = sample_poisson(window, setup.intensity, seeds.points);
      GoodBoxInputs inputs{&points, nullptr, nullptr, nullptr};
      const GoodBoxParams box{L, first, last, params.eps};
      if ((params.variant == GoodBoxVariant::kV || params.variant == GoodBoxVariant::kW) && points.size() >= 3) {
        const Tessellation tess(points, VoronoiOptions{false});
        inputs.diagram = &tess.diagram();
        if (params.variant == GoodBoxVariant::kV) {
          const BondConfiguration bonds = open_bonds(tess.diagram(), params.p, seeds.bonds);
          inputs.bonds = &bonds;
          good[rep] = classify_good_boxes(params.variant, box, inputs);
        } else {
          const EdgeWeights w = assign_weights(tess.graph(), params.weights, seeds.weights);
          inputs.weights = &w;
          good[rep] = classify_good_boxes(params.variant, box, inputs);
        }
        return;
      }
      if (params.variant == GoodBoxVariant::kV || params.variant == GoodBoxVariant::kW) {
        good[rep].assign(static_cast<std::size_t>(G) * static_cast<std::size_t>(G), 0);
        return;
      }
      good[rep] = classify_good_boxes(params.variant, box, inputs);
    });

    std::vector<double> fractions;
    std::vector<double> xs, ys;
    const BoxGrid grid(L, 0.5, first, last);
    const int l = params.dependence;
    for (const auto& g : good) {
      std::size_t n = 0;
      for (const char c : g) n += c ? 1 : 0;
      fractions.push_back(static_cast<double>(n) / static_cast<double>(g.size()));
      for (int x = 0; x < G; ++x) {
        for (int y = 0; y < G; ++y) {
          if (x + l < G) {
            xs.push_back(g[grid.index({x, y})]);
            ys.push_back(g[grid.index({x + l, y})]);
          }
          if (y + l < G) {
            xs.push_back(g[grid.index({x, y})]);
            ys.push_back(g[grid.index({x, y + l})]);
          }
        }
      }
    }
    out.rows.push_back({L, summarize(fractions), correlate(xs, ys)});
    out.fractions.push_back(std::move(fractions));
  }
  return out;
}

}  // namespace fppdt
