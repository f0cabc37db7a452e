#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmoat/lattice_region.hpp"
#include "qmoat/predicates.hpp"

namespace qmoat {

/// Undirected edge between point indices i < j; w is the exact squared length.
struct WeightedEdge {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::int64_t w = 0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct Triangulation {
  std::vector<ScaledPoint> points;
  /// Counterclockwise vertex triples, smallest index first, sorted.
  std::vector<std::array<std::uint32_t, 3>> triangles;
  /// Deduplicated edges sorted by (i, j).
  std::vector<WeightedEdge> edges;
};

namespace detail {

/// Position along a Hilbert curve of side 2^order.
inline std::uint64_t hilbert_index(std::uint64_t x, std::uint64_t y, int order) {
  const std::uint64_t n = 1ULL << order;
  std::uint64_t d = 0;
  for (std::uint64_t s = n / 2; s > 0; s /= 2) {
    const std::uint64_t rx = (x & s) ? 1 : 0;
    const std::uint64_t ry = (y & s) ? 1 : 0;
    d += s * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = n - 1 - x;
        y = n - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

/// Insertion order: along a Hilbert curve over (approximately) true coordinates.
inline std::vector<std::uint32_t> spatial_order(std::span<const ScaledPoint> pts) {
  std::vector<std::uint32_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0U);
  if (pts.empty()) return order;
  const auto y_scale = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(-pts.front().d))));
  std::int64_t min_x = pts.front().u, min_y = pts.front().v * y_scale;
  std::int64_t max_x = min_x, max_y = min_y;
  for (const auto& p : pts) {
    min_x = std::min(min_x, p.u);
    max_x = std::max(max_x, p.u);
    min_y = std::min(min_y, p.v * y_scale);
    max_y = std::max(max_y, p.v * y_scale);
  }
  const auto span = static_cast<std::uint64_t>(std::max(max_x - min_x, max_y - min_y));
  int bits = 1;
  while (bits < 31 && (1ULL << bits) <= span) ++bits;
  std::vector<std::uint64_t> key(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    key[k] = hilbert_index(static_cast<std::uint64_t>(pts[k].u - min_x),
                           static_cast<std::uint64_t>(pts[k].v * y_scale - min_y), bits);
  }
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return key[a] != key[b] ? key[a] < key[b] : a < b;
  });
  return order;
}

/// Incremental Bowyer-Watson insertion over a triangulation closed by ghost
/// triangles that share one vertex at infinity.
///
/// A point conflicts with a finite triangle when it lies strictly inside the
/// circumcircle, and with a ghost triangle (a, b, inf) when it lies strictly
/// outside the hull edge ab or on its open segment. Cocircular points are not
/// in conflict, so an incoming point never displaces an existing triangle
/// whose circle it only touches.
class IncrementalDelaunay {
 public:
  static constexpr int kInfinite = -1;

  explicit IncrementalDelaunay(std::span<const ScaledPoint> pts) : pts_(pts) {}

  /// Builds the triangulation in the given insertion order. Returns false
  /// when every point is collinear (no triangle exists).
  bool build(const std::vector<std::uint32_t>& order) {
    if (order.size() < 3) return false;
    const int a = static_cast<int>(order[0]);
    const int b = static_cast<int>(order[1]);
    std::size_t third = 0;
    for (std::size_t k = 2; k < order.size(); ++k) {
      if (orient(pts_[a], pts_[b], pts_[order[k]]) != 0) {
        third = k;
        break;
      }
    }
    if (third == 0) return false;
    const int c = static_cast<int>(order[third]);
    if (orient(pts_[a], pts_[b], pts_[c]) > 0) {
      init(a, b, c);
    } else {
      init(a, c, b);
    }
    start_of_.assign(pts_.size() + 1, -1);
    end_of_.assign(pts_.size() + 1, -1);
    for (std::size_t k = 2; k < order.size(); ++k) {
      if (k == third) continue;
      insert(static_cast<int>(order[k]));
    }
    return true;
  }

  template <typename Fn>
  void for_each_finite_triangle(Fn&& fn) const {
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (alive_[t] && ghost_slot(static_cast<int>(t)) < 0) fn(static_cast<int>(t), tris_[t].v);
    }
  }

  /// Each undirected finite edge exactly once.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (!alive_[t] || ghost_slot(static_cast<int>(t)) >= 0) continue;
      const Tri& tri = tris_[t];
      for (int k = 0; k < 3; ++k) {
        const int nb = tri.n[k];
        if (ghost_slot(nb) >= 0 || static_cast<int>(t) < nb) fn(tri.v[(k + 1) % 3], tri.v[(k + 2) % 3]);
      }
    }
  }

 private:
  struct Tri {
    std::array<int, 3> v;  // counterclockwise; n[k] lies across the edge opposite v[k]
    std::array<int, 3> n;
  };

  struct BoundaryEdge {
    int a;
    int b;
    int outer;
  };

  const ScaledPoint& pt(int i) const { return pts_[static_cast<std::size_t>(i)]; }

  int ghost_slot(int t) const {
    const auto& v = tris_[static_cast<std::size_t>(t)].v;
    for (int k = 0; k < 3; ++k) {
      if (v[k] == kInfinite) return k;
    }
    return -1;
  }

  int allocate(const std::array<int, 3>& v) {
    if (!free_.empty()) {
      const int t = free_.back();
      free_.pop_back();
      tris_[t] = Tri{v, {-1, -1, -1}};
      alive_[t] = 1;
      return t;
    }
    tris_.push_back(Tri{v, {-1, -1, -1}});
    alive_.push_back(1);
    mark_.push_back(0);
    return static_cast<int>(tris_.size()) - 1;
  }

  void init(int a, int b, int c) {
    const int t = allocate({a, b, c});
    const int g0 = allocate({c, b, kInfinite});
    const int g1 = allocate({a, c, kInfinite});
    const int g2 = allocate({b, a, kInfinite});
    tris_[t].n = {g0, g1, g2};
    tris_[g0].n = {g2, g1, t};
    tris_[g1].n = {g0, g2, t};
    tris_[g2].n = {g1, g0, t};
    last_ = t;
  }

  static bool strictly_between(const ScaledPoint& a, const ScaledPoint& b, const ScaledPoint& p) {
    const wide_int ab_u = b.u - a.u, ab_v = b.v - a.v;
    const wide_int to_a = (wide_int{p.u} - a.u) * ab_u + (wide_int{p.v} - a.v) * ab_v;
    const wide_int to_b = (wide_int{p.u} - b.u) * ab_u + (wide_int{p.v} - b.v) * ab_v;
    return to_a > 0 && to_b < 0;
  }

  bool in_conflict(int t, const ScaledPoint& p) const {
    const Tri& tri = tris_[t];
    const int g = ghost_slot(t);
    if (g < 0) return incircle_det(pt(tri.v[0]), pt(tri.v[1]), pt(tri.v[2]), p) > 0;
    const ScaledPoint& a = pt(tri.v[(g + 1) % 3]);
    const ScaledPoint& b = pt(tri.v[(g + 2) % 3]);
    const int o = orient(a, b, p);
    if (o != 0) return o > 0;
    return strictly_between(a, b, p);
  }

  std::uint32_t next_random() {
    rng_ ^= rng_ << 13;
    rng_ ^= rng_ >> 17;
    rng_ ^= rng_ << 5;
    return rng_;
  }

  int locate(const ScaledPoint& p) {
    int t = last_;
    for (;;) {
      const Tri& tri = tris_[t];
      const int g = ghost_slot(t);
      if (g >= 0) {
        const ScaledPoint& a = pt(tri.v[(g + 1) % 3]);
        const ScaledPoint& b = pt(tri.v[(g + 2) % 3]);
        const int o = orient(a, b, p);
        if (o > 0) return t;
        if (o < 0) {
          t = tri.n[g];
          continue;
        }
        if (strictly_between(a, b, p)) return t;
        const wide_int along = (wide_int{p.u} - a.u) * (b.u - a.u) + (wide_int{p.v} - a.v) * (b.v - a.v);
        t = along > 0 ? tri.n[(g + 1) % 3] : tri.n[(g + 2) % 3];
        continue;
      }
      const int first = static_cast<int>(next_random() % 3);
      bool moved = false;
      for (int i = 0; i < 3; ++i) {
        const int k = (first + i) % 3;
        if (orient(pt(tri.v[(k + 1) % 3]), pt(tri.v[(k + 2) % 3]), p) < 0) {
          t = tri.n[k];
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
  }

  void insert(int pi) {
    const ScaledPoint& p = pt(pi);
    const int seed = locate(p);
    ++stamp_;
    cavity_.clear();
    boundary_.clear();
    stack_.clear();
    mark_[seed] = stamp_;
    stack_.push_back(seed);
    cavity_.push_back(seed);
    while (!stack_.empty()) {
      const int t = stack_.back();
      stack_.pop_back();
      for (int k = 0; k < 3; ++k) {
        const int nb = tris_[t].n[k];
        if (mark_[nb] == stamp_) continue;
        if (in_conflict(nb, p)) {
          mark_[nb] = stamp_;
          stack_.push_back(nb);
          cavity_.push_back(nb);
        } else {
          boundary_.push_back({tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3], nb});
        }
      }
    }
    for (const int t : cavity_) {
      alive_[t] = 0;
      free_.push_back(t);
    }
    int any_finite = -1;
    for (const auto& e : boundary_) {
      const int nt = allocate({e.a, e.b, pi});
      Tri& outer = tris_[e.outer];
      // match by vertices: slots of the old cavity may already be reused
      for (int k = 0; k < 3; ++k) {
        if (outer.v[(k + 1) % 3] == e.b && outer.v[(k + 2) % 3] == e.a) {
          outer.n[k] = nt;
          break;
        }
      }
      tris_[nt].n[2] = e.outer;
      start_of_[e.a + 1] = nt;
      end_of_[e.b + 1] = nt;
      if (e.a != kInfinite && e.b != kInfinite) any_finite = nt;
    }
    for (const auto& e : boundary_) {
      const int nt = start_of_[e.a + 1];
      tris_[nt].n[0] = start_of_[e.b + 1];
      tris_[nt].n[1] = end_of_[e.a + 1];
    }
    last_ = any_finite >= 0 ? any_finite : start_of_[boundary_.front().a + 1];
  }

  std::span<const ScaledPoint> pts_;
  std::vector<Tri> tris_;
  std::vector<char> alive_;
  std::vector<std::uint32_t> mark_;
  std::vector<int> free_;
  std::vector<int> start_of_;
  std::vector<int> end_of_;
  std::vector<int> cavity_;
  std::vector<int> stack_;
  std::vector<BoundaryEdge> boundary_;
  std::uint32_t stamp_ = 0;
  std::uint32_t rng_ = 2463534242U;
  int last_ = 0;
};

inline WeightedEdge make_edge(std::span<const ScaledPoint> pts, std::uint32_t i, std::uint32_t j) {
  if (i > j) std::swap(i, j);
  return {i, j, squared_distance(pts[i], pts[j])};
}

}  // namespace detail

/// Delaunay triangulation of distinct points sharing one field.
///
/// Fewer than three points, or an all-collinear input, yields no triangles
/// and the path through the points in line order.
inline Triangulation triangulate(std::span<const ScaledPoint> points) {
  Triangulation out;
  out.points.assign(points.begin(), points.end());
  const std::span<const ScaledPoint> pts(out.points);
  if (pts.size() > UINT32_MAX / 2) throw std::length_error("triangulate: too many points");
  for (const auto& p : pts) {
    if (p.d != pts.front().d) throw std::invalid_argument("triangulate: points from different fields");
  }

  std::vector<std::uint32_t> by_position(pts.size());
  std::iota(by_position.begin(), by_position.end(), 0U);
  std::sort(by_position.begin(), by_position.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::tie(pts[a].u, pts[a].v, a) < std::tie(pts[b].u, pts[b].v, b);
  });
  for (std::size_t k = 1; k < by_position.size(); ++k) {
    const auto& p = pts[by_position[k - 1]];
    const auto& q = pts[by_position[k]];
    if (p.u == q.u && p.v == q.v) throw std::invalid_argument("triangulate: duplicate points");
  }

  detail::IncrementalDelaunay builder(pts);
  if (!builder.build(detail::spatial_order(pts))) {
    // collinear: lexicographic order is line order
    for (std::size_t k = 1; k < by_position.size(); ++k) {
      out.edges.push_back(detail::make_edge(pts, by_position[k - 1], by_position[k]));
    }
  } else {
    builder.for_each_finite_triangle([&](int, const std::array<int, 3>& v) {
      std::array<std::uint32_t, 3> t{static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1]),
                                     static_cast<std::uint32_t>(v[2])};
      std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
      out.triangles.push_back(t);
    });
    std::sort(out.triangles.begin(), out.triangles.end());
    builder.for_each_edge([&](int a, int b) {
      out.edges.push_back(detail::make_edge(pts, static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)));
    });
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const WeightedEdge& x, const WeightedEdge& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); });
  return out;
}

}  // namespace qmoat
