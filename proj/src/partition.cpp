#include "trisign/partition.hpp"

namespace trisign {

namespace {

void split_leaves(std::size_t start, std::size_t size, std::size_t base,
                  std::vector<std::size_t>& out) {
  if (size <= base) {
    out.push_back(start);
    return;
  }
  const std::size_t half = (size + 1) / 2;  // ceil(size/2)
  split_leaves(start, half, base, out);
  split_leaves(start + half, size - half, base, out);
}

}  // namespace

NestedPartition make_partition(std::size_t n, std::size_t base) {
  assert(n >= 1 && base >= 1);
  NestedPartition p;
  p.n = n;
  p.base = base;

  std::vector<std::size_t> level;
  split_leaves(0, n, base, level);

  std::vector<std::vector<std::size_t>> rev;
  rev.push_back(level);
  while (rev.back().size() > 1) {
    const auto& fine = rev.back();
    std::vector<std::size_t> coarse;
    for (std::size_t i = 0; i < fine.size(); i += 2) coarse.push_back(fine[i]);
    rev.push_back(std::move(coarse));
  }
  p.levels.assign(rev.rbegin(), rev.rend());
  return p;
}

}  // namespace trisign
