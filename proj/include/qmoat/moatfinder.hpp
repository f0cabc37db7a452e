#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "qmoat/delaunay.hpp"
#include "qmoat/lattice_region.hpp"
#include "qmoat/primality.hpp"
#include "qmoat/spanning_tree.hpp"
#include "qmoat/union_find.hpp"

namespace qmoat {

/// One symmetry class of primes, represented by its image in the closed cone.
struct OrbitNode {
  RingElement element;
  ScaledPoint point;
  std::int64_t norm = 0;
};

/// The primes of a padded sector together with the symmetry classes they
/// fall into. Reachability is tracked per class: two classes are adjacent at
/// threshold t when some members lie within sqrt(t) of each other, which is
/// exactly adjacency of the corresponding primes in the whole plane.
struct MoatGraph {
  Sector sector;
  SectorPrimes primes;
  std::vector<OrbitNode> nodes;
  std::vector<std::uint32_t> node_of;  // primes index -> nodes index
  std::uint32_t start = 0;
};

inline MoatGraph build_moat_graph(const Sector& sector, const InertClassifier& classifier) {
  MoatGraph g{sector, generate_sector_primes(sector, classifier), {}, {}, 0};
  if (g.primes.empty()) throw std::invalid_argument("sector contains no primes");
  const QuadField& f = sector.field();
  auto key = [](const RingElement& e) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.a)) << 32) |
           static_cast<std::uint32_t>(e.b);
  };
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  index.reserve(g.primes.size());
  g.node_of.reserve(g.primes.size());
  for (std::size_t k = 0; k < g.primes.size(); ++k) {
    const RingElement rep = canonical_representative(f, g.primes.elements[k]);
    const auto [it, inserted] = index.try_emplace(key(rep), static_cast<std::uint32_t>(g.nodes.size()));
    if (inserted) g.nodes.push_back({rep, embed(f, rep), g.primes.norms[k]});
    g.node_of.push_back(it->second);
  }
  for (std::uint32_t n = 1; n < g.nodes.size(); ++n) {
    const auto& cand = g.nodes[n];
    const auto& best = g.nodes[g.start];
    // minimal norm, then minimal (b, a)
    if (std::tie(cand.norm, cand.element.b, cand.element.a) < std::tie(best.norm, best.element.b, best.element.a)) {
      g.start = n;
    }
  }
  return g;
}

/// Indices of the members of a component with largest norm, x and y.
struct ComponentExtrema {
  std::uint32_t farthest = 0;
  std::uint32_t rightmost = 0;
  std::uint32_t topmost = 0;
};

/// Merges extrema by comparing node data; ties go to the smaller (v, u).
class MergeExtrema {
 public:
  explicit MergeExtrema(std::span<const OrbitNode> nodes) : nodes_(nodes) {}

  ComponentExtrema operator()(const ComponentExtrema& x, const ComponentExtrema& y) const {
    return {pick(x.farthest, y.farthest, [](const OrbitNode& n) { return n.norm; }),
            pick(x.rightmost, y.rightmost, [](const OrbitNode& n) { return n.point.u; }),
            pick(x.topmost, y.topmost, [](const OrbitNode& n) { return n.point.v; })};
  }

 private:
  template <typename Key>
  std::uint32_t pick(std::uint32_t a, std::uint32_t b, Key key) const {
    const auto& na = nodes_[a];
    const auto& nb = nodes_[b];
    const auto ka = key(na);
    const auto kb = key(nb);
    if (ka != kb) return ka > kb ? a : b;
    return std::tie(na.point.v, na.point.u) <= std::tie(nb.point.v, nb.point.u) ? a : b;
  }

  std::span<const OrbitNode> nodes_;
};

using ComponentSets = DisjointSets<ComponentExtrema, MergeExtrema>;

inline ComponentSets make_component_sets(std::span<const OrbitNode> nodes) {
  std::vector<ComponentExtrema> initial(nodes.size());
  for (std::uint32_t n = 0; n < nodes.size(); ++n) initial[n] = {n, n, n};
  return ComponentSets(std::move(initial), MergeExtrema(nodes));
}

struct MoatRecord {
  std::int64_t k_squared = 0;
  RingElement farthest_prime;
  std::int64_t farthest_norm = 0;
  std::uint32_t component_size = 0;
  bool validated = false;
  std::int64_t boundary_used = 0;
  /// Scaled coordinates of the component's rightmost and topmost members.
  std::int64_t rightmost_u = 0;
  std::int64_t topmost_v = 0;

  double k() const { return std::sqrt(static_cast<double>(k_squared)); }
  double distance() const { return std::sqrt(static_cast<double>(farthest_norm)); }
};

namespace detail {

inline MoatRecord make_record(const MoatGraph& g, std::int64_t k_squared, const ComponentExtrema& ex,
                              std::uint32_t size) {
  MoatRecord r;
  r.k_squared = k_squared;
  r.farthest_prime = g.nodes[ex.farthest].element;
  r.farthest_norm = g.nodes[ex.farthest].norm;
  r.component_size = size;
  r.boundary_used = g.sector.boundary();
  r.rightmost_u = g.nodes[ex.rightmost].point.u;
  r.topmost_v = g.nodes[ex.topmost].point.v;
  return r;
}

/// Runs Kruskal over edges in (w, i, j) order, one equal-weight batch at a
/// time, and reports every batch that grows the start component.
template <typename OnGrowth>
void sweep_start_component(const MoatGraph& g, std::span<const WeightedEdge> edges, std::int64_t weight_limit,
                           OnGrowth&& on_growth) {
  std::vector<WeightedEdge> sorted(edges.begin(), edges.end());
  sort_by_weight(sorted);
  auto sets = make_component_sets(g.nodes);
  std::size_t pos = 0;
  while (pos < sorted.size() && sorted[pos].w <= weight_limit) {
    const std::int64_t w = sorted[pos].w;
    const std::uint32_t size_before = sets.component_size(g.start);
    const ComponentExtrema before = sets.summary(g.start);
    for (; pos < sorted.size() && sorted[pos].w == w; ++pos) {
      sets.unite(g.node_of[sorted[pos].i], g.node_of[sorted[pos].j]);
    }
    const std::uint32_t size_after = sets.component_size(g.start);
    if (size_after > size_before) on_growth(w, before, size_before, sets.summary(g.start), size_after);
  }
}

}  // namespace detail

/// Every moat of the start component in increasing order (unvalidated).
///
/// When a batch of weight w' grows the start component and an earlier batch
/// of weight w < w' was the last to grow it, the component was stuck for all
/// steps in [sqrt(w), sqrt(w')): a record with k^2 = w and the frontier just
/// before the w' batch is emitted. The last growth is never reported because
/// nothing beyond it confirms the stall.
inline std::vector<MoatRecord> enumerate_moats(const MoatGraph& g, std::span<const WeightedEdge> edges) {
  if (g.nodes.empty()) throw std::invalid_argument("enumerate_moats: empty prime set");
  if (g.start >= g.nodes.size()) throw std::out_of_range("enumerate_moats: start index out of range");
  std::vector<MoatRecord> records;
  std::int64_t grown = 0;
  detail::sweep_start_component(
      g, edges, std::numeric_limits<std::int64_t>::max(),
      [&](std::int64_t w, const ComponentExtrema& before, std::uint32_t size_before, const ComponentExtrema&,
          std::uint32_t) {
        if (grown > 0) records.push_back(detail::make_record(g, grown, before, size_before));
        grown = w;
      });
  return records;
}

/// Marks and returns whether the record's component sits farther than k
/// from the x-boundary (and the y-boundary for quadrant sectors).
inline bool validate_moat(MoatRecord& rec, const Sector& s) {
  rec.validated = clears_boundaries(s, rec.rightmost_u, rec.topmost_v, rec.k_squared);
  return rec.validated;
}

/// The start component when every step of squared length <= k_squared is allowed.
struct Frontier {
  RingElement farthest_prime;
  std::int64_t farthest_norm = 0;
  std::uint32_t component_size = 1;
  std::int64_t rightmost_u = 0;
  std::int64_t topmost_v = 0;

  double distance() const { return std::sqrt(static_cast<double>(farthest_norm)); }
};

inline Frontier frontier_at(const MoatGraph& g, std::span<const WeightedEdge> edges, std::int64_t k_squared) {
  ComponentExtrema ex{g.start, g.start, g.start};
  std::uint32_t size = 1;
  detail::sweep_start_component(g, edges, k_squared,
                                [&](std::int64_t, const ComponentExtrema&, std::uint32_t, const ComponentExtrema& after,
                                    std::uint32_t size_after) {
                                  ex = after;
                                  size = size_after;
                                });
  const auto& far = g.nodes[ex.farthest];
  return {far.element, far.norm, size, g.nodes[ex.rightmost].point.u, g.nodes[ex.topmost].point.v};
}

struct MoatSearchOptions {
  std::int64_t initial_boundary = 64;
  std::int64_t max_boundary = 1 << 14;
};

struct MoatSearchResult {
  std::vector<MoatRecord> records;
  Frontier frontier;  ///< start component at k_max
  std::int64_t boundary_used = 0;
  std::uint32_t prime_count = 0;
  /// False when the boundary ceiling stopped the search before the
  /// component at k_max could be certified.
  bool complete = false;
};

/// One pass at a fixed boundary: generate, triangulate, sweep, validate.
inline MoatSearchResult search_moats_at(const QuadField& f, std::int64_t k_max_squared, std::int64_t boundary,
                                        const InertClassifier& classifier) {
  const Sector sector(f, boundary, k_max_squared);
  const MoatGraph g = build_moat_graph(sector, classifier);
  const Triangulation tri = triangulate(g.primes.points);
  MoatSearchResult out;
  out.boundary_used = boundary;
  out.prime_count = static_cast<std::uint32_t>(g.primes.size());
  for (auto& rec : enumerate_moats(g, tri.edges)) {
    if (rec.k_squared > k_max_squared) break;
    validate_moat(rec, sector);
    out.records.push_back(rec);
  }
  out.frontier = frontier_at(g, tri.edges, k_max_squared);
  out.complete = clears_boundaries(sector, out.frontier.rightmost_u, out.frontier.topmost_v, k_max_squared);
  return out;
}

/// All moats with k <= k_max, doubling the boundary until the start
/// component at k_max is certified clear of the truncation.
inline MoatSearchResult find_moats_up_to(const QuadField& f, std::int64_t k_max_squared,
                                         const MoatSearchOptions& opts, const InertClassifier& classifier) {
  if (k_max_squared <= 0) throw std::invalid_argument("k_max must be positive");
  if (opts.initial_boundary < 2) throw std::invalid_argument("initial boundary must be at least 2");
  if (opts.initial_boundary > opts.max_boundary) throw std::invalid_argument("initial boundary exceeds the ceiling");
  std::int64_t c = opts.initial_boundary;
  for (;;) {
    MoatSearchResult res = search_moats_at(f, k_max_squared, c, classifier);
    if (res.complete || 2 * c > opts.max_boundary) return res;
    c *= 2;
  }
}

inline MoatSearchResult find_moats_up_to(const QuadField& f, std::int64_t k_max_squared,
                                         const MoatSearchOptions& opts = {}) {
  return find_moats_up_to(f, k_max_squared, opts, InertClassifier(f));
}

/// Farthest prime reachable from the start prime with steps of length <= k,
/// in the sector truncated at the given boundary.
inline Frontier reachable_frontier(const QuadField& f, std::int64_t k_squared, std::int64_t boundary,
                                   const InertClassifier& classifier) {
  const Sector sector(f, boundary, k_squared);
  const MoatGraph g = build_moat_graph(sector, classifier);
  const Triangulation tri = triangulate(g.primes.points);
  return frontier_at(g, tri.edges, k_squared);
}

inline Frontier reachable_frontier(const QuadField& f, std::int64_t k_squared, std::int64_t boundary) {
  return reachable_frontier(f, k_squared, boundary, InertClassifier(f));
}

}  // namespace qmoat
