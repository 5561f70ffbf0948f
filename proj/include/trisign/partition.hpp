#ifndef TRISIGN_PARTITION_HPP
#define TRISIGN_PARTITION_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

namespace trisign {

/// Level-indexed family of strictly increasing block start indices driving
/// the recursive algorithms. Level 0 is {0}; every coarser level is the
/// odd-position subsequence of the next finer one; at the finest level every
/// range has size <= base.
///
/// Indices are 0-based with one-past-end sentinel n (the 1-based presentation
/// with sentinel n+1 maps by adding 1 everywhere).
struct NestedPartition {
  std::size_t n = 0;
  std::size_t base = 0;
  std::vector<std::vector<std::size_t>> levels;

  std::size_t depth() const { return levels.size() - 1; }

  /// Start of the next range after i at the given level, or the sentinel n.
  std::size_t eta(std::size_t level, std::size_t i) const {
    const auto& lv = levels[level];
    auto it = std::lower_bound(lv.begin(), lv.end(), i);
    assert(it != lv.end() && *it == i && "eta: i is not a start at this level");
    ++it;
    return it == lv.end() ? n : *it;
  }

  /// Start of the previous range before i; pi(n) is the last start.
  std::size_t pi(std::size_t level, std::size_t i) const {
    const auto& lv = levels[level];
    if (i == n) return lv.back();
    auto it = std::lower_bound(lv.begin(), lv.end(), i);
    assert(it != lv.end() && *it == i && "pi: i is not a start at this level");
    assert(it != lv.begin() && "pi: i is the first start of the level");
    return *(it - 1);
  }

  bool contains(std::size_t level, std::size_t i) const {
    const auto& lv = levels[level];
    return std::binary_search(lv.begin(), lv.end(), i);
  }
};

/// Builds the partition by recursively splitting [0,n) at ceil(size/2) until
/// every range has size <= base; the finest level collects the leaf starts
/// and each coarser level keeps the odd positions of the finer one, which is
/// exactly the nesting the recursion needs.
NestedPartition make_partition(std::size_t n, std::size_t base);

}  // namespace trisign

#endif
