#ifndef TRISIGN_SYLVESTER_HPP
#define TRISIGN_SYLVESTER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "trisign/classic.hpp"
#include "trisign/kernels.hpp"
#include "trisign/tri_matrix.hpp"

namespace trisign {

/// Record of a sign-grouping reordering: the rotations in application order.
/// k <= n^2/4 always (the worst case is a balanced spectrum with every
/// positive entry ahead of every negative one).
struct ReorderPlan {
  std::vector<GivensRotation> rotations;
  std::size_t k() const { return rotations.size(); }
};

/// Stable bubble pass swapping adjacent (+,-) diagonal pairs until the first
/// n_minus diagonal entries have negative real part. Relative order within
/// each sign class is preserved, so the swap count equals the number of
/// (positive before negative) inversions of the original sign sequence.
ReorderPlan reorder_by_sign(TriMatrix& t, CostStats& stats);

/// Solves A F - F B = C for F, overwriting C. A (p x p) and B (q x q) are
/// upper triangular with disjoint spectra; C is dense p x q. Recursive: the
/// larger dimension is halved, the dependency-first half solved, the other
/// half's right-hand side updated with one block multiply; blocks of
/// dimension <= 8 fall back to element back-substitution, innermost scalar
/// f_ij = (c_ij - updates) / (a_ii - b_jj). Throws SingularSylvester on an
/// exactly zero scalar denominator and warns (stderr) when one is within
/// 1e-12 * max(|a_ii|,|b_jj|) of zero.
void solve_tri_sylvester(BlockView a, BlockView b, BlockView c,
                         CostStats& stats);

/// The Parlett-Sylvester path specialized to the sign function:
/// reorder negatives-first, set the diagonal blocks of U~ to -I and +I,
/// solve one Sylvester equation for the off-diagonal block, and transport
/// the result back through the recorded rotations in reverse.
///
/// With U~ = [[-I, F], [0, I]] the commutation relation U~T~ = T~U~ gives in
/// the (1,2) block  -T~12 + F T~22 = T~11 F + T~12, i.e.
///   T~11 F - F T~22 = -2 T~12,
/// which is the right-hand side used here.
SignResult parlett_sylvester_sign(const TriMatrix& t);

/// Fills f_ii from t_ii for diagonal block `index`; both views are square.
using BlockFunction =
    std::function<void(const BlockView& t_ii, BlockView f_ii, std::size_t index)>;

/// Generic block-Parlett skeleton over an explicit block partition (starts
/// must begin with 0, strictly increasing, < n). Diagonal blocks via
/// diag_fn; off-diagonal blocks F_ij solved column-of-blocks ascending,
/// block-row descending, from
///   T_ii F_ij - F_ij T_jj = F_ii T_ij - T_ij F_jj
///                           + sum_{k=i+1}^{j-1} (F_ik T_kj - T_ik F_kj).
TriMatrix block_parlett_sylvester(const TriMatrix& t,
                                  const std::vector<std::size_t>& starts,
                                  const BlockFunction& diag_fn,
                                  CostStats& stats);

}  // namespace trisign

#endif
