#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "qmoat/primality.hpp"
#include "qmoat/quadring.hpp"

namespace qmoat {

/// The embedded point (u / 2, (v / 2) * sqrt(|d|)), stored exactly.
struct ScaledPoint {
  std::int64_t u = 0;
  std::int64_t v = 0;
  std::int64_t d = -1;

  friend bool operator==(const ScaledPoint&, const ScaledPoint&) = default;

  double x() const noexcept { return static_cast<double>(u) / 2.0; }
  double y() const noexcept { return static_cast<double>(v) / 2.0 * std::sqrt(static_cast<double>(-d)); }
};

inline ScaledPoint embed(const QuadField& f, const RingElement& e) noexcept {
  if (f.basis() == BasisKind::sqrt_d) return {2 * e.a, 2 * e.b, f.d()};
  return {2 * e.a - e.b, e.b, f.d()};
}

inline RingElement unembed(const QuadField& f, const ScaledPoint& p) {
  if (f.basis() == BasisKind::sqrt_d) {
    if (p.u % 2 != 0 || p.v % 2 != 0) throw std::invalid_argument("scaled point is not on the Z[sqrt(d)] lattice");
    return {p.u / 2, p.v / 2};
  }
  if ((p.u + p.v) % 2 != 0) throw std::invalid_argument("scaled point is not on the half-integer lattice");
  return {(p.u + p.v) / 2, p.v};
}

/// Exact squared Euclidean distance; equals the norm of the element difference.
inline std::int64_t squared_distance(const ScaledPoint& p, const ScaledPoint& q) noexcept {
  const wide_int du = p.u - q.u;
  const wide_int dv = p.v - q.v;
  return static_cast<std::int64_t>((du * du + wide_int{-p.d} * dv * dv) / 4);
}

enum class SectorKind {
  octant,   ///< d = -1: 0 <= y <= x <= C
  twelfth,  ///< d = -3: 0 <= y <= x / sqrt(3), x <= C
  quadrant  ///< otherwise: 0 <= x <= C, 0 <= y <= C
};

inline SectorKind sector_kind_for(const QuadField& f) noexcept {
  if (f.d() == -1) return SectorKind::octant;
  if (f.d() == -3) return SectorKind::twelfth;
  return SectorKind::quadrant;
}

/// How many copies of the sector tile the plane under units and conjugation.
inline int symmetry_fold(SectorKind k) noexcept {
  switch (k) {
    case SectorKind::octant: return 8;
    case SectorKind::twelfth: return 12;
    case SectorKind::quadrant: return 4;
  }
  return 4;
}

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline std::int64_t ceil_sqrt(std::int64_t n) {
  if (n <= 0) return 0;
  const auto r = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(n)));
  return r * r == n ? r : r + 1;
}

}  // namespace detail

/// Symmetry-reduced search region, truncated at x = C (and y = C for the
/// quadrant). The angular sides are widened by a margin of sqrt(pad_squared)
/// so walks that cross a symmetry line stay inside the generated set.
class Sector {
 public:
  Sector(const QuadField& f, std::int64_t boundary, std::int64_t pad_squared = 0)
      : field_(f), boundary_(boundary), pad_squared_(pad_squared), kind_(sector_kind_for(f)) {
    if (boundary < 0) throw std::invalid_argument("sector boundary must be non-negative");
    if (pad_squared < 0) throw std::invalid_argument("sector pad must be non-negative");
  }

  const QuadField& field() const noexcept { return field_; }
  std::int64_t boundary() const noexcept { return boundary_; }
  std::int64_t pad_squared() const noexcept { return pad_squared_; }
  SectorKind kind() const noexcept { return kind_; }
  int fold() const noexcept { return symmetry_fold(kind_); }
  bool has_y_boundary() const noexcept { return kind_ == SectorKind::quadrant; }

  /// Closed symmetry cone, ignoring the C-boundaries and the pad.
  bool in_cone(const ScaledPoint& p) const noexcept {
    switch (kind_) {
      case SectorKind::octant: return p.v >= 0 && p.v <= p.u;
      case SectorKind::twelfth: return p.v >= 0 && 3 * p.v <= p.u;
      case SectorKind::quadrant: return p.u >= 0 && p.v >= 0;
    }
    return false;
  }

  bool within_boundaries(const ScaledPoint& p) const noexcept {
    if (p.u > 2 * boundary_) return false;
    if (kind_ == SectorKind::quadrant && p.v > 0) {
      const wide_int lhs = wide_int{field_.abs_d()} * p.v * p.v;
      if (lhs > wide_int{4} * boundary_ * boundary_) return false;
    }
    return true;
  }

  /// Unpadded sector membership.
  bool contains(const ScaledPoint& p) const noexcept { return in_cone(p) && within_boundaries(p); }

  /// Membership in the sector widened by the pad on its angular sides.
  bool contains_padded(const ScaledPoint& p) const noexcept {
    if (!within_boundaries(p)) return false;
    const wide_int pad4 = wide_int{4} * pad_squared_;
    const wide_int abs_d = field_.abs_d();
    // y >= -pad
    if (p.v < 0 && abs_d * p.v * p.v > pad4) return false;
    switch (kind_) {
      case SectorKind::octant: {
        // distance beyond y = x is (v - u) / (2 sqrt 2)
        const wide_int over = p.v - p.u;
        return over <= 0 || over * over <= 2 * pad4;
      }
      case SectorKind::twelfth: {
        // distance beyond y = x / sqrt 3 is (3v - u) / 4
        const wide_int over = wide_int{3} * p.v - p.u;
        return over <= 0 || over * over <= 4 * pad4;
      }
      case SectorKind::quadrant: {
        // x >= -pad
        return p.u >= 0 || wide_int{p.u} * p.u <= pad4;
      }
    }
    return false;
  }

  /// Visits every lattice element in the padded sector, row-major in b then a.
  template <typename Fn>
  void for_each_lattice_point(Fn&& fn) const {
    const std::int64_t abs_d = field_.abs_d();
    const std::int64_t c2 = 2 * boundary_;
    const std::int64_t pad4 = 4 * pad_squared_;
    const std::int64_t v_lo = -static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(pad4 / abs_d)));
    std::int64_t v_hi = 0;
    switch (kind_) {
      case SectorKind::octant: v_hi = c2 + detail::ceil_sqrt(2 * pad4); break;
      case SectorKind::twelfth: v_hi = detail::floor_div(c2 + detail::ceil_sqrt(4 * pad4), 3); break;
      case SectorKind::quadrant:
        v_hi = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(4 * boundary_ * boundary_ / abs_d)));
        break;
    }
    const bool sqrt_basis = field_.basis() == BasisKind::sqrt_d;
    for (std::int64_t v = v_lo; v <= v_hi; ++v) {
      if (sqrt_basis && (v % 2 != 0)) continue;
      std::int64_t u_lo = 0;
      switch (kind_) {
        case SectorKind::octant: u_lo = v - detail::ceil_sqrt(2 * pad4); break;
        case SectorKind::twelfth: u_lo = 3 * v - detail::ceil_sqrt(4 * pad4); break;
        case SectorKind::quadrant: u_lo = -detail::ceil_sqrt(pad4); break;
      }
      // u = 2a (sqrt basis) or u = 2a - b (half-integer basis)
      const std::int64_t b = sqrt_basis ? v / 2 : v;
      const std::int64_t shift = sqrt_basis ? 0 : b;
      const std::int64_t a_lo = detail::ceil_div(u_lo + shift, 2);
      const std::int64_t a_hi = detail::floor_div(c2 + shift, 2);
      for (std::int64_t a = a_lo; a <= a_hi; ++a) {
        const RingElement e{a, b};
        if (contains_padded(embed(field_, e))) fn(e);
      }
    }
  }

  std::vector<RingElement> lattice_points() const {
    std::vector<RingElement> out;
    for_each_lattice_point([&](const RingElement& e) { out.push_back(e); });
    return out;
  }

 private:
  QuadField field_;
  std::int64_t boundary_;
  std::int64_t pad_squared_;
  SectorKind kind_;
};

inline std::vector<RingElement> sector_lattice_bounds(const Sector& s) { return s.lattice_points(); }

/// The unique symmetry image of a nonzero element inside the closed cone.
inline RingElement canonical_representative(const QuadField& f, const RingElement& e) {
  if (e.a == 0 && e.b == 0) throw std::invalid_argument("zero element has no canonical representative");
  const Sector cone(f, 0);
  bool found = false;
  RingElement best;
  ScaledPoint best_pt;
  for_each_symmetry_image(f, e, [&](const RingElement& img) {
    const ScaledPoint p = embed(f, img);
    if (!cone.in_cone(p)) return;
    if (!found || std::tie(p.v, p.u) < std::tie(best_pt.v, best_pt.u)) {
      found = true;
      best = img;
      best_pt = p;
    }
  });
  if (!found) throw std::logic_error("no symmetry image lies in the cone");
  return best;
}

/// Ring primes of a sector with their embeddings, sorted by norm then (v, u).
struct SectorPrimes {
  std::vector<RingElement> elements;
  std::vector<ScaledPoint> points;
  std::vector<std::int64_t> norms;

  std::size_t size() const noexcept { return elements.size(); }
  bool empty() const noexcept { return elements.empty(); }
};

inline SectorPrimes generate_sector_primes(const Sector& s, const InertClassifier& classifier) {
  if (!(classifier.field() == s.field())) throw std::invalid_argument("classifier and sector disagree on d");
  struct Entry {
    std::int64_t norm;
    ScaledPoint point;
    RingElement element;
  };
  std::vector<Entry> found;
  s.for_each_lattice_point([&](const RingElement& e) {
    if (classifier.is_ring_prime(e)) {
      found.push_back({static_cast<std::int64_t>(norm(s.field(), e)), embed(s.field(), e), e});
    }
  });
  std::sort(found.begin(), found.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.norm, x.point.v, x.point.u) < std::tie(y.norm, y.point.v, y.point.u);
  });
  SectorPrimes out;
  out.elements.reserve(found.size());
  out.points.reserve(found.size());
  out.norms.reserve(found.size());
  for (const auto& entry : found) {
    out.elements.push_back(entry.element);
    out.points.push_back(entry.point);
    out.norms.push_back(entry.norm);
  }
  return out;
}

inline SectorPrimes generate_sector_primes(const Sector& s) {
  return generate_sector_primes(s, InertClassifier(s.field()));
}

struct BoundaryDistances {
  double d1 = 0.0;
  std::optional<double> d2;
};

/// D1 = C - max x; D2 = C - max y (quadrant sectors only).
inline BoundaryDistances boundary_distances(const Sector& s, std::span<const ScaledPoint> pts) {
  if (pts.empty()) throw std::invalid_argument("boundary_distances needs at least one point");
  double max_x = pts.front().x();
  double max_y = pts.front().y();
  for (const auto& p : pts) {
    max_x = std::max(max_x, p.x());
    max_y = std::max(max_y, p.y());
  }
  BoundaryDistances out;
  const auto c = static_cast<double>(s.boundary());
  out.d1 = c - max_x;
  if (s.has_y_boundary()) out.d2 = c - max_y;
  return out;
}

/// Exact test of D1 > k (and D2 > k for the quadrant) for the given extreme
/// scaled coordinates, with k = sqrt(k_squared).
inline bool clears_boundaries(const Sector& s, std::int64_t max_u, std::int64_t max_v, std::int64_t k_squared) {
  const wide_int k2 = k_squared;
  const wide_int slack_x = wide_int{2} * s.boundary() - max_u;
  if (slack_x <= 0 || slack_x * slack_x <= 4 * k2) return false;
  if (!s.has_y_boundary()) return true;
  // 2C > v sqrt|d| + 2k  <=>  M > 0 and M^2 > 16 v^2 |d| k^2, M = 4C^2 - |d| v^2 - 4k^2
  const wide_int v = max_v > 0 ? max_v : 0;
  const wide_int abs_d = s.field().abs_d();
  const wide_int c = s.boundary();
  const wide_int m = 4 * c * c - abs_d * v * v - 4 * k2;
  if (m <= 0) return false;
  return m * m > 16 * v * v * abs_d * k2;
}

}  // namespace qmoat
