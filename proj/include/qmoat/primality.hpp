#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmoat/quadring.hpp"

namespace qmoat {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline bool miller_rabin_round(std::uint64_t n, std::uint64_t d, int s, std::uint64_t a) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime_miller_rabin(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  if (n < (1ULL << 32)) {
    for (std::uint64_t a : {2ULL, 7ULL, 61ULL}) {
      if (!detail::miller_rabin_round(n, d, s, a)) return false;
    }
    return true;
  }
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (!detail::miller_rabin_round(n, d, s, a)) return false;
  }
  return true;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Sieve of Eratosthenes up to a fixed limit with a Miller-Rabin fallback above it.
class RationalPrimes {
 public:
  static constexpr std::uint64_t kDefaultLimit = 1ULL << 26;

  explicit RationalPrimes(std::uint64_t sieve_limit = kDefaultLimit) : limit_(sieve_limit < 2 ? 2 : sieve_limit) {
    // odd numbers only: bit k stands for 2k + 1
    composite_.assign(limit_ / 2 + 1, false);
    composite_[0] = true;
    for (std::uint64_t i = 3; i * i <= limit_; i += 2) {
      if (composite_[i / 2]) continue;
      for (std::uint64_t j = i * i; j <= limit_; j += 2 * i) composite_[j / 2] = true;
    }
  }

  std::uint64_t limit() const noexcept { return limit_; }

  bool is_prime(std::uint64_t n) const {
    if (n <= limit_) {
      if (n < 2) return false;
      if ((n & 1) == 0) return n == 2;
      return !composite_[n / 2];
    }
    return is_prime_miller_rabin(n);
  }

  bool is_prime(wide_int n) const {
    if (n < 2) return false;
    if (n > static_cast<wide_int>(UINT64_MAX)) throw std::overflow_error("primality query beyond 64 bits");
    return is_prime(static_cast<std::uint64_t>(n));
  }

  /// Rational primes p <= n, in increasing order.
  std::vector<std::uint64_t> primes_up_to(std::uint64_t n) const {
    std::vector<std::uint64_t> out;
    if (n >= 2) out.push_back(2);
    for (std::uint64_t m = 3; m <= n; m += 2) {
      if (is_prime(m)) out.push_back(m);
    }
    return out;
  }

 private:
  std::uint64_t limit_;
  std::vector<bool> composite_;
};

/// Shared table with the default sieve limit, built on first use.
inline const RationalPrimes& default_rational_primes() {
  static const RationalPrimes table;
  return table;
}

/// Decides which rational primes stay prime (inert) in the ring of integers.
///
/// For d = 1 (mod 4) an odd p not dividing d is inert exactly when p is a
/// quadratic non-residue mod |d|; for d = -1 and d = -2 the classes are
/// taken mod 8. The residue table is built once by squaring.
class InertClassifier {
 public:
  explicit InertClassifier(const QuadField& f, const RationalPrimes& primes = default_rational_primes())
      : field_(f), primes_(&primes) {
    if (f.basis() == BasisKind::half_integer) {
      modulus_ = f.abs_d();
      std::vector<bool> square(modulus_, false);
      for (std::int64_t r = 1; r < modulus_; ++r) square[(r * r) % modulus_] = true;
      nonresidue_.assign(modulus_, false);
      for (std::int64_t r = 1; r < modulus_; ++r) nonresidue_[r] = !square[r];
    } else {
      modulus_ = 8;
      nonresidue_.assign(8, false);
      if (f.d() == -1) {
        nonresidue_[3] = nonresidue_[7] = true;
      } else {
        nonresidue_[5] = nonresidue_[7] = true;
      }
    }
    const std::int64_t d_mod_8 = ((f.d() % 8) + 8) % 8;
    two_is_inert_ = (f.discriminant() % 2 != 0) && d_mod_8 == 5;
  }

  const QuadField& field() const noexcept { return field_; }
  std::int64_t modulus() const noexcept { return modulus_; }
  bool two_is_inert() const noexcept { return two_is_inert_; }

  /// Residue classes (mod modulus()) whose odd primes are inert.
  std::vector<std::int64_t> nonresidues() const {
    std::vector<std::int64_t> out;
    for (std::int64_t r = 0; r < modulus_; ++r) {
      if (nonresidue_[r]) out.push_back(r);
    }
    return out;
  }

  bool is_ramified(std::uint64_t p) const noexcept {
    const auto disc = static_cast<std::uint64_t>(-field_.discriminant());
    return disc % p == 0;
  }

  /// Throws std::invalid_argument if p is not a rational prime.
  bool is_inert(std::uint64_t p) const {
    if (!primes_->is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not a rational prime");
    return is_inert_unchecked(p);
  }

  /// As is_inert, for p already known to be prime.
  bool is_inert_unchecked(std::uint64_t p) const noexcept {
    if (is_ramified(p)) return false;
    if (p == 2) return two_is_inert_;
    return nonresidue_[p % static_cast<std::uint64_t>(modulus_)];
  }

  /// A nonzero non-unit is prime iff its norm is a rational prime, or it is
  /// an associate of an inert rational prime q (norm q^2).
  bool is_ring_prime(const RingElement& e) const {
    const wide_int n = norm(field_, e);
    if (n <= 1) return false;
    if (primes_->is_prime(n)) return true;
    if (n > static_cast<wide_int>(UINT64_MAX)) return false;
    const std::uint64_t q = isqrt(static_cast<std::uint64_t>(n));
    if (static_cast<wide_int>(q) * q != n) return false;
    if (!primes_->is_prime(q) || !is_inert_unchecked(q)) return false;
    return is_associate(field_, e, RingElement{static_cast<std::int64_t>(q), 0});
  }

  const RationalPrimes& rational_primes() const noexcept { return *primes_; }

 private:
  QuadField field_;
  const RationalPrimes* primes_;
  std::int64_t modulus_ = 0;
  std::vector<bool> nonresidue_;
  bool two_is_inert_ = false;
};

inline bool is_rational_prime(std::uint64_t n) { return default_rational_primes().is_prime(n); }

inline bool is_inert(const QuadField& f, std::uint64_t p) { return InertClassifier(f).is_inert(p); }

inline bool is_ring_prime(const QuadField& f, const RingElement& e) { return InertClassifier(f).is_ring_prime(e); }

}  // namespace qmoat
