#pragma once

#include <stdexcept>

#include "qmoat/lattice_region.hpp"

namespace qmoat {

// Both predicates work on scaled coordinates. The embedded y-axis carries a
// common positive factor sqrt(|d|) / 2 that is pulled out of the determinant,
// so the signs are those of exact integer determinants.

inline int sign(wide_int x) noexcept { return (x > 0) - (x < 0); }

/// +1 if a, b, c turn counterclockwise, -1 if clockwise, 0 if collinear.
inline int orient(const ScaledPoint& a, const ScaledPoint& b, const ScaledPoint& c) noexcept {
  const wide_int det = wide_int{b.u - a.u} * (c.v - a.v) - wide_int{b.v - a.v} * (c.u - a.u);
  return sign(det);
}

namespace detail {

/// Raw in-circle determinant; positive when a, b, c are counterclockwise and
/// d lies strictly inside their circumcircle.
inline wide_int incircle_det(const ScaledPoint& a, const ScaledPoint& b, const ScaledPoint& c,
                             const ScaledPoint& d) noexcept {
  const wide_int abs_d = -d.d;
  auto lift = [&](const ScaledPoint& p) {
    return (wide_int{p.u} * p.u - wide_int{d.u} * d.u) + abs_d * (wide_int{p.v} * p.v - wide_int{d.v} * d.v);
  };
  const wide_int au = a.u - d.u, av = a.v - d.v, al = lift(a);
  const wide_int bu = b.u - d.u, bv = b.v - d.v, bl = lift(b);
  const wide_int cu = c.u - d.u, cv = c.v - d.v, cl = lift(c);
  return au * (bv * cl - bl * cv) - av * (bu * cl - bl * cu) + al * (bu * cv - bv * cu);
}

}  // namespace detail

/// +1 if d lies strictly inside the circumcircle of triangle abc, 0 if the
/// four points are cocircular, -1 otherwise. The triangle may be given in
/// either orientation; collinear a, b, c are rejected.
inline int in_circumcircle(const ScaledPoint& a, const ScaledPoint& b, const ScaledPoint& c, const ScaledPoint& d) {
  if (a.d != b.d || a.d != c.d || a.d != d.d) throw std::invalid_argument("in_circumcircle: points from different fields");
  const int o = orient(a, b, c);
  if (o == 0) throw std::invalid_argument("in_circumcircle: collinear triangle");
  return o * sign(detail::incircle_det(a, b, c, d));
}

}  // namespace qmoat
