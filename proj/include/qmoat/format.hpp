#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qmoat/primality.hpp"

namespace qmoat {

/// "2" for k^2 = 4, "sqrt(8)" for k^2 = 8.
inline std::string format_k(std::int64_t k_squared) {
  if (k_squared < 0) throw std::invalid_argument("negative k^2");
  const auto r = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(k_squared)));
  if (r * r == k_squared) return std::to_string(r);
  return "sqrt(" + std::to_string(k_squared) + ")";
}

/// Parses "sqrt:N" as k^2 = N, or a decimal k as the largest integer
/// k^2 with sqrt(k^2) <= k. Squared step lengths are integers, so the two
/// spellings select the same steps.
inline std::int64_t parse_k_squared(std::string_view text) {
  constexpr std::string_view prefix = "sqrt:";
  if (text.starts_with(prefix)) {
    const std::string_view digits = text.substr(prefix.size());
    std::int64_t n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || n <= 0) {
      throw std::invalid_argument("expected sqrt:N with N a positive integer, got '" + std::string(text) + "'");
    }
    return n;
  }
  double k = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !(k > 0) || !std::isfinite(k)) {
    throw std::invalid_argument("expected a positive number or sqrt:N, got '" + std::string(text) + "'");
  }
  if (k > 3.0e9) throw std::invalid_argument("k too large");
  auto n = static_cast<std::int64_t>(std::floor(k * k * (1.0 + 1e-12)));
  if (n <= 0) throw std::invalid_argument("k must be at least 1 to allow any step");
  return n;
}

}  // namespace qmoat
