#ifndef TRISIGN_COST_STATS_HPP
#define TRISIGN_COST_STATS_HPP

#include <cstddef>
#include <cstdint>

namespace trisign {

// Flop convention, used by every counter in the project:
//   complex multiply        = 6 real flops
//   complex add / subtract  = 2 real flops
//   complex multiply-add    = 8 real flops
//   complex divide          = 8 real flops (one reciprocal-style estimate)
// An abstract "operation" in the usual n^3-style counts is one multiply or
// one add, so a length-m inner product (m multiply-adds, 8m units here) is
// 2m abstract operations. Ratios against c*n^3 abstract operations therefore
// divide the unit counter by kUnitsPerAbstractOp * c * n^3.
inline constexpr std::uint64_t kMulFlops = 6;
inline constexpr std::uint64_t kAddFlops = 2;
inline constexpr std::uint64_t kMulAddFlops = kMulFlops + kAddFlops;
inline constexpr std::uint64_t kDivFlops = 8;
inline constexpr double kUnitsPerAbstractOp = 4.0;

/// Counters attached to every algorithm run. Monotone non-decreasing and
/// additive across subcalls; totals are exact integers, so parallel callers
/// must either increment once per call (the multiply kernel does) or merge
/// per-worker copies.
struct CostStats {
  std::uint64_t flops = 0;      // flop convention units, see above
  std::uint64_t swaps = 0;      // adjacent eigenvalue swaps
  std::uint64_t sim_words = 0;  // simulated word transfers, when traced

  void add(const CostStats& o) {
    flops += o.flops;
    swaps += o.swaps;
    sim_words += o.sim_words;
  }
};

/// Receiver for logical element accesses; the trace-driven cache simulator
/// implements this. Algorithms trace only when a sink is attached.
class MemTracer {
 public:
  virtual ~MemTracer() = default;
  virtual void access(int mat_id, std::size_t index, bool is_write) = 0;
};

}  // namespace trisign

#endif
