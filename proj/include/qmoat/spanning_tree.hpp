#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "qmoat/delaunay.hpp"
#include "qmoat/union_find.hpp"

namespace qmoat {

inline void sort_by_weight(std::vector<WeightedEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    return std::tie(x.w, x.i, x.j) < std::tie(y.w, y.i, y.j);
  });
}

/// Kruskal's algorithm; returns the minimum spanning forest in acceptance order.
inline std::vector<WeightedEdge> kruskal_mst(std::size_t point_count, std::vector<WeightedEdge> edges) {
  sort_by_weight(edges);
  DisjointSets<> sets(point_count);
  std::vector<WeightedEdge> tree;
  tree.reserve(point_count > 0 ? point_count - 1 : 0);
  for (const auto& e : edges) {
    if (sets.unite(e.i, e.j)) tree.push_back(e);
  }
  return tree;
}

/// Every pair of points; the quadratic baseline.
inline std::vector<WeightedEdge> complete_graph_edges(std::span<const ScaledPoint> pts) {
  std::vector<WeightedEdge> edges;
  edges.reserve(pts.size() * (pts.size() - (pts.empty() ? 0 : 1)) / 2);
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    for (std::uint32_t j = i + 1; j < pts.size(); ++j) edges.push_back({i, j, squared_distance(pts[i], pts[j])});
  }
  return edges;
}

/// Sorted squared edge lengths of a spanning forest.
inline std::vector<std::int64_t> weight_sequence(std::span<const WeightedEdge> tree) {
  std::vector<std::int64_t> w;
  w.reserve(tree.size());
  for (const auto& e : tree) w.push_back(e.w);
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace qmoat
