#ifndef TRISIGN_KERNELS_HPP
#define TRISIGN_KERNELS_HPP

#include <cstddef>

#include "trisign/cost_stats.hpp"
#include "trisign/tri_matrix.hpp"

namespace trisign {

/// Unitary plane rotation acting in the (position, position+1) plane,
/// G = [[c, s], [-conj(s), c]] with real c and |c|^2 + |s|^2 = 1.
struct GivensRotation {
  double c = 1.0;
  cplx s = cplx(0.0, 0.0);
  std::size_t position = 0;
};

enum class RotSide { Left, Right, Both };

/// C <- C + alpha * A * B. Dimensions must conform and C must be disjoint
/// from A and B. Books exactly kMulAddFlops * p*q*r flop units per call.
/// Tiled and OpenMP-parallel over output columns when the product is large;
/// a tracing path replaces the fast one when a tracer is attached.
void block_mul_acc(BlockView c, BlockView a, BlockView b, cplx alpha,
                   CostStats& stats, MemTracer* tracer = nullptr);

/// Naive serial triple loop with identical contract; the reference the
/// tests and the kernel benchmark compare against.
void block_mul_acc_ref(BlockView c, BlockView a, BlockView b, cplx alpha,
                       CostStats& stats);

/// Unitary similarity T <- G T G^* exchanging the diagonal entries j and
/// j+1 of an upper-triangular T (rotation computed from the vector
/// (t_{j,j+1}, t_{j+1,j+1} - t_{j,j}), LAPACK ztrexc style). The (j+1,j)
/// entry is explicitly zeroed afterwards to keep the triangular invariant
/// exact. Throws EqualEigenvalues when t_jj == t_{j+1,j+1}.
GivensRotation swap_adjacent(TriMatrix& t, std::size_t j, CostStats& stats);

/// Applies G (or G^*, when inverse) to the requested side(s) of A over the
/// full 0..n-1 extent: left multiplies rows position/position+1 by G, right
/// multiplies the corresponding columns by G^*. Both sides give the
/// similarity G A G^* (inverse: G^* A G), which is how the sign is
/// transported back through a reordering.
void apply_rotation_similarity(TriMatrix& a, const GivensRotation& g,
                               RotSide side, CostStats& stats,
                               bool inverse = false);

}  // namespace trisign

#endif
