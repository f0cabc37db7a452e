#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmoat {

/// Signed 128-bit integer used for every intermediate product.
using wide_int = __int128;

/// The nine negative d for which the ring of integers of Q(sqrt(d)) is a UFD.
inline constexpr std::array<std::int64_t, 9> kUfdValues = {-1, -2, -3, -7, -11, -19, -43, -67, -163};

enum class BasisKind {
  sqrt_d,       ///< Z[sqrt(d)], d = -1, -2
  half_integer  ///< Z[(-1 + sqrt(d)) / 2], d = 1 (mod 4)
};

/// An imaginary quadratic field with class number one.
class QuadField {
 public:
  explicit QuadField(std::int64_t d) : d_(d) {
    if (std::find(kUfdValues.begin(), kUfdValues.end(), d) == kUfdValues.end()) {
      throw std::invalid_argument("d = " + std::to_string(d) +
                                  " is not one of -1, -2, -3, -7, -11, -19, -43, -67, -163");
    }
  }

  std::int64_t d() const noexcept { return d_; }
  std::int64_t abs_d() const noexcept { return -d_; }

  BasisKind basis() const noexcept { return (d_ == -1 || d_ == -2) ? BasisKind::sqrt_d : BasisKind::half_integer; }

  /// d when d = 1 (mod 4), otherwise 4d.
  std::int64_t discriminant() const noexcept { return basis() == BasisKind::half_integer ? d_ : 4 * d_; }

  int unit_count() const noexcept {
    if (d_ == -1) return 4;
    if (d_ == -3) return 6;
    return 2;
  }

  /// Symbol used when printing a + b*tau.
  std::string_view tau_symbol() const noexcept {
    switch (d_) {
      case -1: return "i";
      case -2: return "sqrt(-2)";
      case -3: return "w";
      default: return "t";
    }
  }

  friend bool operator==(const QuadField&, const QuadField&) = default;

 private:
  std::int64_t d_;
};

/// a + b*tau in the integral basis {1, tau} of the field.
struct RingElement {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend auto operator<=>(const RingElement&, const RingElement&) = default;
};

inline wide_int norm(const QuadField& f, const RingElement& e) noexcept {
  const wide_int a = e.a;
  const wide_int b = e.b;
  if (f.basis() == BasisKind::sqrt_d) {
    return a * a - wide_int{f.d()} * b * b;
  }
  // a^2 - ab + ((1 - d) / 4) b^2
  return a * a - a * b + wide_int{(1 - f.d()) / 4} * b * b;
}

inline RingElement conjugate(const QuadField& f, const RingElement& e) noexcept {
  if (f.basis() == BasisKind::sqrt_d) return {e.a, -e.b};
  // conj(tau) = -1 - tau
  return {e.a - e.b, -e.b};
}

inline RingElement subtract(const RingElement& x, const RingElement& y) noexcept { return {x.a - y.a, x.b - y.b}; }

inline RingElement negate(const RingElement& x) noexcept { return {-x.a, -x.b}; }

/// Ring product. Only the pipeline's oracles and the associate test need it.
inline RingElement multiply(const QuadField& f, const RingElement& x, const RingElement& y) noexcept {
  if (f.basis() == BasisKind::sqrt_d) {
    return {x.a * y.a + f.d() * x.b * y.b, x.a * y.b + y.a * x.b};
  }
  // tau^2 = -tau + (d - 1) / 4
  return {x.a * y.a + ((f.d() - 1) / 4) * x.b * y.b, x.a * y.b + y.a * x.b - x.b * y.b};
}

/// The unit group: {+-1, +-i}, {+-1, +-w, +-w^2} or {+-1}.
inline std::span<const RingElement> unit_span(const QuadField& f) noexcept {
  static constexpr RingElement gaussian[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  static constexpr RingElement eisenstein[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, -1}, {1, 1}};
  static constexpr RingElement plus_minus_one[] = {{1, 0}, {-1, 0}};
  switch (f.d()) {
    case -1: return gaussian;
    case -3: return eisenstein;
    default: return plus_minus_one;
  }
}

inline std::vector<RingElement> units(const QuadField& f) {
  const auto us = unit_span(f);
  return {us.begin(), us.end()};
}

/// Calls fn on every image of e under multiplication by units and conjugation
/// (with repeats when e lies on a symmetry line).
template <typename Fn>
void for_each_symmetry_image(const QuadField& f, const RingElement& e, Fn&& fn) {
  const RingElement c = conjugate(f, e);
  for (const auto& u : unit_span(f)) {
    fn(multiply(f, u, e));
    fn(multiply(f, u, c));
  }
}

inline std::vector<RingElement> symmetry_images(const QuadField& f, const RingElement& e) {
  std::vector<RingElement> out;
  for_each_symmetry_image(f, e, [&](const RingElement& img) { out.push_back(img); });
  return out;
}

inline bool is_associate(const QuadField& f, const RingElement& x, const RingElement& y) {
  for (const auto& u : unit_span(f)) {
    if (multiply(f, u, y) == x) return true;
  }
  return false;
}

/// Decimal rendering of a 128-bit integer.
inline std::string to_string(wide_int v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string s;
  while (v != 0) {
    const int digit = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (neg ? -digit : digit)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

/// Text form "a+b*t", with unit coefficients and zero terms elided: "2+i", "3-2*w", "7".
inline std::string display(const QuadField& f, const RingElement& e) {
  const std::string tau{f.tau_symbol()};
  if (e.b == 0) return std::to_string(e.a);
  std::string s;
  if (e.a != 0) s = std::to_string(e.a);
  const std::int64_t mag = e.b < 0 ? -e.b : e.b;
  if (e.b < 0) {
    s += "-";
  } else if (e.a != 0) {
    s += "+";
  }
  if (mag != 1) s += std::to_string(mag) + "*";
  s += tau;
  return s;
}

}  // namespace qmoat
