#ifndef TRISIGN_CLASSIC_HPP
#define TRISIGN_CLASSIC_HPP

#include <cstdint>
#include <functional>

#include "trisign/cost_stats.hpp"
#include "trisign/tri_matrix.hpp"

namespace trisign {

using ScalarFunction = std::function<cplx(cplx)>;

/// Computed sign plus its cost counters. branch_eq1 counts elements solved
/// through the commutation relation UT = TU (two inner products),
/// branch_eq2 those solved through U^2 = I (one inner product); for the
/// Higham-style algorithms they sum to n(n-1)/2.
struct SignResult {
  TriMatrix u;
  CostStats stats;
  std::uint64_t branch_eq1 = 0;
  std::uint64_t branch_eq2 = 0;
};

/// Parlett's substitution recurrence for a general scalar function phi of an
/// upper-triangular matrix, superdiagonal by superdiagonal (columns
/// ascending, rows descending). Requires pairwise distinct diagonal entries;
/// throws RepeatedEigenvalue otherwise.
TriMatrix parlett_function(const TriMatrix& t, const ScalarFunction& phi,
                           CostStats& stats);

/// Higham's sign-specialized recurrence: u_ii = sign(Re t_ii); for i<j the
/// commutation formula when u_ii + u_jj = 0, otherwise
/// u_ij = -sum(u_ik u_kj)/(u_ii + u_jj). Never divides by a small quantity:
/// opposite diagonal signs imply Re(t_ii) != Re(t_jj).
SignResult parlett_higham_sign(const TriMatrix& t, MemTracer* tracer = nullptr);

namespace detail {
/// The recurrence restricted to the diagonal window [i0,i1); writes into u.
/// Shared between parlett_higham_sign (whole matrix) and the recursive
/// algorithms' diagonal leaf blocks.
void higham_block(const TriMatrix& t, TriMatrix& u, std::size_t i0,
                  std::size_t i1, CostStats& stats, std::uint64_t& branch_eq1,
                  std::uint64_t& branch_eq2, MemTracer* tracer);
}  // namespace detail

}  // namespace trisign

#endif
