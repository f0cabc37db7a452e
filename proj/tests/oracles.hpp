#pragma once

// Brute-force reference implementations used only by the tests. They share
// no arithmetic with the library beyond the plain (a, b) coordinates.

#include <algorithm>
#include <cmath>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using i128 = __int128;

struct Elt {
  i64 a = 0;
  i64 b = 0;
  friend auto operator<=>(const Elt&, const Elt&) = default;
};

inline bool half_integer(i64 d) { return d != -1 && d != -2; }

/// Multiplication from tau^2 = d (d = -1, -2) or tau^2 = -tau + (d - 1) / 4.
inline Elt mul(i64 d, Elt x, Elt y) {
  const i64 aa = x.a * y.a, ab = x.a * y.b, ba = x.b * y.a, bb = x.b * y.b;
  if (!half_integer(d)) return {aa + d * bb, ab + ba};
  return {aa + bb * ((d - 1) / 4), ab + ba - bb};
}

/// Norm as the product of the complex embedding with its conjugate,
/// evaluated in exact integers: for tau = (-1 + sqrt d) / 2 the embedding is
/// ((2a - b) + b sqrt d) / 2.
inline i64 nrm(i64 d, Elt e) {
  if (!half_integer(d)) return e.a * e.a - d * e.b * e.b;
  const i64 re2 = 2 * e.a - e.b;
  return (re2 * re2 - d * e.b * e.b) / 4;
}

inline Elt conj(i64 d, Elt e) {
  if (!half_integer(d)) return {e.a, -e.b};
  return {e.a - e.b, -e.b};
}

inline std::vector<Elt> unit_list(i64 d) {
  std::vector<Elt> out;
  for (i64 a = -1; a <= 1; ++a) {
    for (i64 b = -1; b <= 1; ++b) {
      if (nrm(d, {a, b}) == 1) out.push_back({a, b});
    }
  }
  return out;
}

/// x divides e when e * conj(x) / N(x) has integer coordinates.
inline bool divides(i64 d, Elt x, Elt e) {
  const i64 n = nrm(d, x);
  const Elt y = mul(d, e, conj(d, x));
  return y.a % n == 0 && y.b % n == 0;
}

/// All elements of norm in [lo, hi], by scanning a box.
inline std::vector<Elt> elements_with_norm(i64 d, i64 lo, i64 hi) {
  std::vector<Elt> out;
  const i64 r = static_cast<i64>(std::sqrt(static_cast<double>(hi))) * 2 + 2;
  for (i64 a = -r; a <= r; ++a) {
    for (i64 b = -r; b <= r; ++b) {
      const i64 n = nrm(d, {a, b});
      if (n >= lo && n <= hi) out.push_back({a, b});
    }
  }
  return out;
}

/// Irreducibility by searching for a proper divisor of norm <= sqrt(N(e)).
/// `small` must hold every element with 1 < norm <= sqrt(N(e)).
inline bool irreducible(i64 d, Elt e, const std::vector<Elt>& small) {
  const i64 n = nrm(d, e);
  if (n <= 1) return false;
  for (const Elt& x : small) {
    const i64 m = nrm(d, x);
    if (m * m > n) continue;
    if (n % m != 0) continue;
    if (divides(d, x, e)) return false;
  }
  return true;
}

/// Floating-point picture of a lattice element.
inline std::pair<long double, long double> xy(i64 d, Elt e) {
  const long double s = std::sqrt(static_cast<long double>(-d));
  if (!half_integer(d)) return {static_cast<long double>(e.a), static_cast<long double>(e.b) * s};
  return {e.a - e.b / 2.0L, e.b / 2.0L * s};
}

constexpr long double kEps = 1e-9L;

/// Sector test by plane geometry: the cone widened by `pad` on its angular
/// sides, cut at x <= c (and y <= c for the quadrant).
inline bool in_sector(i64 d, Elt e, i64 c, long double pad) {
  const auto [x, y] = xy(d, e);
  if (x > c + kEps) return false;
  if (y < -pad - kEps) return false;
  if (d == -1) return (y - x) / std::sqrt(2.0L) <= pad + kEps;
  if (d == -3) {
    // distance above the line y = x / sqrt(3), whose unit normal is (-1/2, sqrt(3)/2)
    return -x / 2 + y * std::sqrt(3.0L) / 2 <= pad + kEps;
  }
  return x >= -pad - kEps && y <= c + kEps;
}

inline bool in_cone(i64 d, Elt e) { return in_sector(d, e, 1LL << 40, 0); }

/// The in-cone image under units and conjugation with the smallest (y, x).
inline Elt canonical(i64 d, Elt e) {
  Elt best{};
  bool have = false;
  long double by = 0, bx = 0;
  for (const Elt& u : unit_list(d)) {
    for (const Elt& img : {mul(d, u, e), mul(d, u, conj(d, e))}) {
      if (!in_cone(d, img)) continue;
      const auto [x, y] = xy(d, img);
      if (!have || y < by - kEps || (std::abs(y - by) <= kEps && x < bx - kEps)) {
        best = img;
        by = y;
        bx = x;
        have = true;
      }
    }
  }
  return best;
}

inline i64 dist2_scaled(i64 d, Elt p, Elt q) { return nrm(d, {p.a - q.a, p.b - q.b}); }

/// One moat: the orbit component of the start prime while steps up to
/// sqrt(k2) are allowed and the next larger step is needed to grow.
struct Record {
  i64 k2 = 0;
  Elt farthest;
  i64 farthest_norm = 0;
  std::size_t orbits = 0;
  friend bool operator==(const Record&, const Record&) = default;
};

/// Primes of the padded sector found by box scan and irreducibility.
inline std::vector<Elt> sector_primes(i64 d, i64 c, long double pad) {
  const i64 r = 2 * (c + static_cast<i64>(pad) + 2);
  const i64 max_norm = 4 * r * r;
  std::vector<Elt> small;
  for (const Elt& x : elements_with_norm(d, 2, static_cast<i64>(std::sqrt(static_cast<double>(max_norm))) + 1)) {
    small.push_back(x);
  }
  std::vector<Elt> out;
  for (i64 a = -r; a <= r; ++a) {
    for (i64 b = -r; b <= r; ++b) {
      const Elt e{a, b};
      if (!in_sector(d, e, c, pad)) continue;
      if (irreducible(d, e, small)) out.push_back(e);
    }
  }
  return out;
}

/// Every growth of the start orbit's component over the complete graph on
/// `points`, ignoring the last one, as in the moat tables. Reachability is
/// explored per threshold through each point's distance-sorted neighbours.
inline std::vector<Record> complete_graph_records(i64 d, const std::vector<Elt>& points) {
  const std::size_t n = points.size();
  std::map<Elt, std::size_t> orbit_id;
  std::vector<std::size_t> orbit_of(n);
  std::vector<Elt> orbit_rep;
  for (std::size_t k = 0; k < n; ++k) {
    const Elt c = canonical(d, points[k]);
    auto [it, fresh] = orbit_id.try_emplace(c, orbit_rep.size());
    if (fresh) orbit_rep.push_back(c);
    orbit_of[k] = it->second;
  }
  std::vector<std::vector<std::size_t>> members(orbit_rep.size());
  for (std::size_t k = 0; k < n; ++k) members[orbit_of[k]].push_back(k);

  std::size_t start = 0;
  for (std::size_t o = 1; o < orbit_rep.size(); ++o) {
    const Elt& a = orbit_rep[o];
    const Elt& s = orbit_rep[start];
    if (std::make_tuple(nrm(d, a), a.b, a.a) < std::make_tuple(nrm(d, s), s.b, s.a)) start = o;
  }

  std::vector<std::vector<std::pair<i64, std::size_t>>> nbr(n);
  std::set<i64> weights;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const i64 w = dist2_scaled(d, points[i], points[j]);
      nbr[i].push_back({w, j});
      weights.insert(w);
    }
    std::sort(nbr[i].begin(), nbr[i].end());
  }

  std::vector<char> reached(orbit_rep.size(), 0);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::size_t> active;
  auto reach = [&](std::size_t o) {
    reached[o] = 1;
    for (std::size_t k : members[o]) active.push_back(k);
  };
  reach(start);
  std::size_t count = 1;
  auto farthest = [&] {
    std::size_t best = start;
    for (std::size_t o = 0; o < orbit_rep.size(); ++o) {
      if (!reached[o]) continue;
      const i64 nb = nrm(d, orbit_rep[best]), no = nrm(d, orbit_rep[o]);
      if (no > nb) best = o;
    }
    return best;
  };

  std::vector<Record> growth;
  for (i64 t : weights) {
    const std::size_t before = count;
    bool progress = true;
    while (progress) {
      progress = false;
      const std::vector<std::size_t> snapshot = active;
      for (std::size_t k : snapshot) {
        while (cursor[k] < nbr[k].size() && nbr[k][cursor[k]].first <= t) {
          const std::size_t o = orbit_of[nbr[k][cursor[k]].second];
          ++cursor[k];
          if (!reached[o]) {
            reach(o);
            ++count;
            progress = true;
          }
        }
      }
    }
    if (count > before) {
      const std::size_t f = farthest();
      growth.push_back({t, orbit_rep[f], nrm(d, orbit_rep[f]), count});
    }
  }
  if (!growth.empty()) growth.pop_back();
  return growth;
}

/// Growth thresholds of the start prime's component in the whole plane,
/// restricted to t in thresholds, with no symmetry reduction. Each result
/// carries the canonical image of the farthest prime reached. `ok` is false
/// when the reachable set came within sqrt(t) of the disk edge.
struct PlaneResult {
  i64 k2 = 0;
  Elt farthest;
  i64 farthest_norm = 0;
  bool ok = true;
};

inline std::vector<PlaneResult> plane_frontiers(i64 d, i64 radius_norm, const std::vector<i64>& thresholds) {
  std::vector<Elt> small;
  for (const Elt& x : elements_with_norm(d, 2, static_cast<i64>(std::sqrt(static_cast<double>(radius_norm))) + 1)) {
    small.push_back(x);
  }
  std::vector<Elt> primes;
  std::map<Elt, std::size_t> index;
  for (const Elt& e : elements_with_norm(d, 2, radius_norm)) {
    if (irreducible(d, e, small)) {
      index[e] = primes.size();
      primes.push_back(e);
    }
  }
  Elt start = primes.front();
  for (const Elt& p : primes) {
    const Elt c = canonical(d, p);
    if (std::make_tuple(nrm(d, c), c.b, c.a) < std::make_tuple(nrm(d, start), start.b, start.a)) start = c;
  }
  std::vector<PlaneResult> out;
  for (i64 t : thresholds) {
    // lattice offsets with norm <= t
    const std::vector<Elt> steps = elements_with_norm(d, 1, t);
    std::vector<char> seen(primes.size(), 0);
    std::queue<std::size_t> q;
    q.push(index.at(start));
    seen[index.at(start)] = 1;
    PlaneResult r{t, start, nrm(d, start), true};
    while (!q.empty()) {
      const Elt p = primes[q.front()];
      q.pop();
      const i64 np = nrm(d, p);
      if (np > r.farthest_norm) {
        r.farthest_norm = np;
        r.farthest = canonical(d, p);
      }
      const long double reach = std::sqrt(static_cast<long double>(np)) + std::sqrt(static_cast<long double>(t));
      if (reach * reach >= radius_norm) r.ok = false;
      for (const Elt& s : steps) {
        const auto it = index.find({p.a + s.a, p.b + s.b});
        if (it == index.end() || seen[it->second]) continue;
        seen[it->second] = 1;
        q.push(it->second);
      }
    }
    out.push_back(r);
  }
  return out;
}

struct Pt {
  i64 u = 0;
  i64 v = 0;
};

/// Exact in-circle with the 4x4 lifted determinant on (u, v * sqrt|d|).
inline int incircle_lifted(i64 abs_d, Pt a, Pt b, Pt c, Pt p) {
  auto row = [&](Pt q) {
    return std::array<i128, 3>{q.u - p.u, q.v - p.v,
                               i128(q.u - p.u) * (q.u - p.u) + i128(abs_d) * (q.v - p.v) * (q.v - p.v)};
  };
  const auto ra = row(a), rb = row(b), rc = row(c);
  // 3x3 determinant in (u, v, lift); the sqrt|d| factor on v is a positive scale
  const i128 det = ra[0] * (rb[1] * rc[2] - rb[2] * rc[1]) - ra[1] * (rb[0] * rc[2] - rb[2] * rc[0]) +
                   ra[2] * (rb[0] * rc[1] - rb[1] * rc[0]);
  const i128 orient = i128(b.u - a.u) * (c.v - a.v) - i128(b.v - a.v) * (c.u - a.u);
  const int s = (det > 0) - (det < 0);
  return orient > 0 ? s : -s;
}

/// Number of (triangle, point) pairs with the point strictly inside the circumcircle.
template <typename Tri>
std::size_t empty_circle_violations(i64 abs_d, const std::vector<Pt>& pts, const std::vector<Tri>& tris) {
  std::size_t bad = 0;
  const double s = std::sqrt(static_cast<double>(abs_d));
  for (const auto& t : tris) {
    const Pt a = pts[t[0]], b = pts[t[1]], c = pts[t[2]];
    // circumcircle in floating point, only as a filter before the exact test
    const double ax = a.u, ay = a.v * s, bx = b.u, by = b.v * s, cx = c.u, cy = c.v * s;
    const double dd = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    const double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / dd;
    const double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / dd;
    const double r = std::hypot(ax - ux, ay - uy);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k == t[0] || k == t[1] || k == t[2]) continue;
      const double dist = std::hypot(pts[k].u - ux, pts[k].v * s - uy);
      if (dist > r * (1 + 1e-9) + 1e-9) continue;
      if (incircle_lifted(abs_d, a, b, c, pts[k]) > 0) ++bad;
    }
  }
  return bad;
}

/// Points on the convex hull boundary, collinear ones included.
inline std::size_t hull_boundary_count(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end(), [](Pt x, Pt y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  if (pts.size() < 3) return pts.size();
  auto cross = [](Pt o, Pt a, Pt b) { return i128(a.u - o.u) * (b.v - o.v) - i128(a.v - o.v) * (b.u - o.u); };
  // strict hull by monotone chain, then every point lying on one of its edges
  std::vector<Pt> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k);  // closed: hull.front() == hull.back()
  std::size_t count = 0;
  for (const Pt& p : pts) {
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
      const Pt a = hull[e], b = hull[e + 1];
      if (cross(a, b, p) != 0) continue;
      if (p.u < std::min(a.u, b.u) || p.u > std::max(a.u, b.u)) continue;
      if (p.v < std::min(a.v, b.v) || p.v > std::max(a.v, b.v)) continue;
      ++count;
      break;
    }
  }
  return count;
}

/// Bottleneck (minimax) distance between every pair, by Floyd-Warshall.
inline std::vector<std::vector<i64>> minimax_matrix(const std::vector<std::vector<i64>>& w) {
  auto m = w;
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = std::min(m[i][j], std::max(m[i][k], m[k][j]));
    }
  }
  return m;
}

}  // namespace oracle
