#ifndef TRISIGN_RECURSIVE_HPP
#define TRISIGN_RECURSIVE_HPP

#include <cstdint>
#include <vector>

#include "trisign/classic.hpp"
#include "trisign/cost_stats.hpp"
#include "trisign/tri_matrix.hpp"

namespace trisign {

/// Verification state for the recursive algorithms, active only when
/// requested: tracks which U entries are final (every read must hit a final
/// entry) and, at every leaf element, recomputes the accumulated sums by
/// direct summation over the full k range for comparison.
struct RecursiveDebug {
  std::vector<std::uint8_t> u_ready;      // n*n, column-major, 1 = final
  std::vector<std::uint8_t> branch_map;   // n*n; 1 = commutation branch, 2 = U^2=I branch
  double max_accumulator_dev = 0.0;       // scale-relative, see recursive.cpp
  std::uint64_t read_before_write = 0;    // violations observed (should be 0)
};

/// Matrix-multiply recursive Parlett-Higham: maintains both running sums
///   X_ij = sum (u_ik t_kj - t_ik u_kj)   and   Y_ij = sum u_ik u_kj
/// in full upper-triangular accumulators, updating them with block
/// multiplies between the four recursive calls of each off-diagonal split.
/// Blocks of dimension <= base are leaves: diagonal leaves run the classic
/// recurrence locally, off-diagonal leaves combine the accumulated block
/// sums with locally computed partial sums over the leaf's own index range.
SignResult sign_recursive_mm(const TriMatrix& t, std::size_t base,
                             MemTracer* tracer = nullptr,
                             RecursiveDebug* debug = nullptr);

/// Arithmetic-efficient variant: one accumulator Z, and each update computes
/// per element only the sum its leaf branch will need (the Y-type sum when
/// the diagonal signs agree, the X-type sum otherwise). The per-element
/// branch in the update kernel is what keeps this variant off the fast
/// multiply path; that property is preserved deliberately for benchmarking.
SignResult sign_recursive_ae(const TriMatrix& t, std::size_t base,
                             MemTracer* tracer = nullptr,
                             RecursiveDebug* debug = nullptr);

}  // namespace trisign

#endif
