#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace qmoat {

struct NoSummary {};

struct MergeNothing {
  NoSummary operator()(const NoSummary&, const NoSummary&) const noexcept { return {}; }
};

/// Union-find by rank with path halving. Each root carries a Summary of its
/// component; `merge` combines two summaries when components join and must
/// be associative and commutative.
template <typename Summary = NoSummary, typename Merge = MergeNothing>
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n, Merge merge = Merge{})
      : parent_(n), rank_(n, 0), size_(n, 1), summary_(n), merge_(std::move(merge)) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  DisjointSets(std::vector<Summary> initial, Merge merge)
      : parent_(initial.size()),
        rank_(initial.size(), 0),
        size_(initial.size(), 1),
        summary_(std::move(initial)),
        merge_(std::move(merge)) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::size_t element_count() const noexcept { return parent_.size(); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns false when x and y were already connected.
  bool unite(std::uint32_t x, std::uint32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    size_[x] += size_[y];
    summary_[x] = merge_(summary_[x], summary_[y]);
    return true;
  }

  bool connected(std::uint32_t x, std::uint32_t y) { return find(x) == find(y); }

  std::uint32_t component_size(std::uint32_t x) { return size_[find(x)]; }

  const Summary& summary(std::uint32_t x) { return summary_[find(x)]; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<std::uint32_t> size_;
  std::vector<Summary> summary_;
  Merge merge_;
};

}  // namespace qmoat
