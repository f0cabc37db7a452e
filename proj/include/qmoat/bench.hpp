#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qmoat/delaunay.hpp"
#include "qmoat/lattice_region.hpp"
#include "qmoat/spanning_tree.hpp"

namespace qmoat {

struct BenchRow {
  std::int64_t boundary = 0;
  std::size_t points = 0;
  double t_delaunay = 0;  ///< seconds, median over repeats
  std::optional<double> t_complete;
  std::optional<bool> mst_match;
  std::int64_t mst_weight = 0;
};

namespace detail {

template <typename Fn>
double median_seconds(int repeats, Fn&& fn) {
  std::vector<double> times;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

}  // namespace detail

/// Times triangulation + Kruskal against Kruskal on the complete graph for
/// the primes of each sector. The baseline only runs up to baseline_max points.
inline std::vector<BenchRow> run_bench(const QuadField& f, std::span<const std::int64_t> boundaries,
                                       std::size_t baseline_max, int repeats, const InertClassifier& classifier) {
  if (repeats < 1) throw std::invalid_argument("repeats must be positive");
  std::vector<BenchRow> rows;
  for (std::int64_t c : boundaries) {
    const SectorPrimes primes = generate_sector_primes(Sector(f, c), classifier);
    BenchRow row;
    row.boundary = c;
    row.points = primes.size();
    std::vector<WeightedEdge> fast;
    row.t_delaunay = detail::median_seconds(repeats, [&] {
      const Triangulation tri = triangulate(primes.points);
      fast = kruskal_mst(primes.size(), tri.edges);
    });
    for (const auto& e : fast) row.mst_weight += e.w;
    if (primes.size() <= baseline_max) {
      std::vector<WeightedEdge> slow;
      row.t_complete = detail::median_seconds(repeats, [&] {
        slow = kruskal_mst(primes.size(), complete_graph_edges(primes.points));
      });
      row.mst_match = weight_sequence(fast) == weight_sequence(slow);
    }
    rows.push_back(row);
  }
  return rows;
}

/// Least-squares slope of log(t) against log(points).
inline double loglog_slope(std::span<const BenchRow> rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (r.points < 2 || r.t_delaunay <= 0) continue;
    const double x = std::log(static_cast<double>(r.points));
    const double y = std::log(r.t_delaunay);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("slope needs at least two timed sizes");
  const double denom = n * sxx - sx * sx;
  if (denom == 0) throw std::invalid_argument("slope needs two distinct sizes");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace qmoat
