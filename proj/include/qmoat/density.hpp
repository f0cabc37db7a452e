#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qmoat/lattice_region.hpp"
#include "qmoat/primality.hpp"
#include "qmoat/quadring.hpp"

namespace qmoat {

enum class SectorFraction { quarter, octant, twelfth };

inline double fraction_value(SectorFraction s) noexcept {
  switch (s) {
    case SectorFraction::octant: return 1.0 / 8.0;
    case SectorFraction::twelfth: return 1.0 / 12.0;
    default: return 0.25;
  }
}

/// The fraction matching the field's symmetry sector.
inline SectorFraction sector_fraction_for(const QuadField& f) noexcept {
  switch (sector_kind_for(f)) {
    case SectorKind::octant: return SectorFraction::octant;
    case SectorKind::twelfth: return SectorFraction::twelfth;
    default: return SectorFraction::quarter;
  }
}

/// Area of {N <= R^2} in lattice coordinates (a, b).
inline double ellipse_area(const QuadField& f, double radius) {
  const double base = std::numbers::pi * radius * radius / std::sqrt(static_cast<double>(f.abs_d()));
  return f.basis() == BasisKind::sqrt_d ? base : 2.0 * base;
}

inline double sector_area(const QuadField& f, double radius, SectorFraction fraction) {
  if (!(radius > 0)) throw std::invalid_argument("sector_area: radius must be positive");
  return ellipse_area(f, radius) * fraction_value(fraction);
}

/// Largest integer n with n <= R^2, tolerant of rounding in R = sqrt(n).
inline std::int64_t norm_bound_for(double radius) {
  if (!(radius >= 0)) throw std::invalid_argument("radius must be non-negative");
  const double sq = radius * radius;
  if (sq > 9.0e18) throw std::overflow_error("radius too large");
  return static_cast<std::int64_t>(std::floor(sq * (1.0 + 1e-12) + 1e-9));
}

namespace detail {

/// Calls fn(a_lo, a_hi, b) for each row b >= 0 of the ellipse N(a + b*tau) <= bound.
template <typename Fn>
void for_each_norm_row(const QuadField& f, std::int64_t bound, Fn&& fn) {
  const std::int64_t ad = f.abs_d();
  for (std::int64_t b = 0;; ++b) {
    if (f.basis() == BasisKind::sqrt_d) {
      const wide_int rest = wide_int{bound} - wide_int{ad} * b * b;
      if (rest < 0) break;
      const auto s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(rest)));
      fn(-s, s, b);
    } else {
      // (2a - b)^2 <= 4 * bound - |d| b^2
      const wide_int rest = wide_int{4} * bound - wide_int{ad} * b * b;
      if (rest < 0) break;
      const auto s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(rest)));
      fn(ceil_div(b - s, 2), floor_div(b + s, 2), b);
    }
  }
}

}  // namespace detail

/// Ring primes with norm <= bound, split by origin.
struct PrimeCensus {
  std::int64_t norm_bound = 0;
  std::int64_t total = 0;  ///< every prime element, associates included
  std::int64_t split = 0;  ///< norm is a rational prime (split or ramified)
  std::int64_t inert = 0;  ///< associates of inert rational primes
  std::int64_t quadrant = 0;  ///< a > 0, b >= 0
};

inline PrimeCensus census_primes(const QuadField& f, std::int64_t norm_bound, const InertClassifier& classifier) {
  PrimeCensus c;
  c.norm_bound = norm_bound;
  if (norm_bound < 2) return c;
  const RationalPrimes& rp = classifier.rational_primes();
  detail::for_each_norm_row(f, norm_bound, [&](std::int64_t lo, std::int64_t hi, std::int64_t b) {
    // negation pairs row b > 0 with row -b; row 0 is symmetric by itself
    const std::int64_t weight = b == 0 ? 1 : 2;
    for (std::int64_t a = lo; a <= hi; ++a) {
      const RingElement e{a, b};
      const wide_int n = norm(f, e);
      bool prime = false;
      if (rp.is_prime(n)) {
        c.split += weight;
        prime = true;
      } else if (classifier.is_ring_prime(e)) {
        c.inert += weight;
        prime = true;
      }
      if (prime && a > 0) ++c.quadrant;
    }
  });
  c.total = c.split + c.inert;
  return c;
}

/// Ring primes a + b*tau with a > 0, b >= 0 and norm <= bound.
inline std::int64_t count_primes_in_quadrant(const QuadField& f, std::int64_t norm_bound,
                                             const InertClassifier& classifier) {
  return census_primes(f, norm_bound, classifier).quadrant;
}

inline std::int64_t count_primes_in_quadrant(const QuadField& f, double radius) {
  return count_primes_in_quadrant(f, norm_bound_for(radius), InertClassifier(f));
}

struct DensityReport {
  std::int64_t d = 0;
  double R = 0;
  std::int64_t norm_bound = 0;
  int fold = 1;
  std::int64_t total_count = 0;
  std::int64_t split_count = 0;
  std::int64_t inert_count = 0;
  std::int64_t quadrant_count = 0;
  /// Primes per symmetry sector: total_count / fold.
  double empirical_count = 0;
  double asymptotic_count = 0;
  double sector_area = 0;
  double empirical_density = 0;
  double asymptotic_density = 0;
  double relative_error = 0;
};

inline DensityReport density_report(const QuadField& f, double radius, const InertClassifier& classifier) {
  if (!(radius >= 10)) throw std::invalid_argument("density_report: radius must be at least 10");
  DensityReport r;
  r.d = f.d();
  r.R = radius;
  r.norm_bound = norm_bound_for(radius);
  const PrimeCensus c = census_primes(f, r.norm_bound, classifier);
  r.fold = symmetry_fold(sector_kind_for(f));
  r.total_count = c.total;
  r.split_count = c.split;
  r.inert_count = c.inert;
  r.quadrant_count = c.quadrant;
  r.empirical_count = static_cast<double>(c.total) / r.fold;
  r.asymptotic_count = radius * radius / (4.0 * std::log(radius));
  r.sector_area = sector_area(f, radius, sector_fraction_for(f));
  r.empirical_density = r.empirical_count / r.sector_area;
  r.asymptotic_density = r.asymptotic_count / r.sector_area;
  r.relative_error = std::abs(r.empirical_count - r.asymptotic_count) / r.asymptotic_count;
  return r;
}

/// Builds a sieve large enough for R^2 when the shared one is too small.
inline DensityReport density_report(const QuadField& f, double radius) {
  const std::int64_t bound = norm_bound_for(radius);
  if (static_cast<std::uint64_t>(bound) <= default_rational_primes().limit()) {
    return density_report(f, radius, InertClassifier(f));
  }
  const auto sieve = std::make_unique<RationalPrimes>(static_cast<std::uint64_t>(bound));
  return density_report(f, radius, InertClassifier(f, *sieve));
}

/// Number of rational primes p <= x in each residue class mod m.
inline std::vector<std::int64_t> residue_class_counts(const RationalPrimes& primes, std::uint64_t x, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  std::vector<std::int64_t> counts(m, 0);
  for (std::uint64_t p : primes.primes_up_to(x)) ++counts[p % m];
  return counts;
}

/// Euler's phi by trial division.
inline std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t result = m;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

/// Units mod |d| split into quadratic residues (A) and non-residues (B).
struct ResidueSplit {
  std::int64_t modulus = 0;
  std::vector<std::int64_t> residues;
  std::vector<std::int64_t> nonresidues;
};

/// Only defined for d = 1 (mod 4), where |d| is prime.
inline ResidueSplit quadratic_residue_split(const QuadField& f) {
  if (f.basis() != BasisKind::half_integer) throw std::invalid_argument("residue split needs d = 1 (mod 4)");
  ResidueSplit s;
  s.modulus = f.abs_d();
  std::vector<bool> square(s.modulus, false);
  for (std::int64_t r = 1; r < s.modulus; ++r) square[(r * r) % s.modulus] = true;
  for (std::int64_t r = 1; r < s.modulus; ++r) (square[r] ? s.residues : s.nonresidues).push_back(r);
  return s;
}

}  // namespace qmoat
