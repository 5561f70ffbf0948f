#include "trisign/kernels.hpp"

#include <cassert>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace trisign {

namespace {

constexpr std::size_t kTileI = 256;
constexpr std::size_t kTileJ = 64;
constexpr std::size_t kTileK = 64;
constexpr std::size_t kParallelCutoff = 32768;  // p*q*r below this stays serial

void mul_acc_traced(BlockView c, BlockView a, BlockView b, cplx alpha,
                    MemTracer* tr) {
  for (std::size_t j = 0; j < c.cols; ++j)
    for (std::size_t i = 0; i < c.rows; ++i) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < a.cols; ++k) {
        tr->access(a.mat_id, a.parent_index(i, k), false);
        tr->access(b.mat_id, b.parent_index(k, j), false);
        acc += a.at(i, k) * b.at(k, j);
      }
      tr->access(c.mat_id, c.parent_index(i, j), false);
      c.at(i, j) += alpha * acc;
      tr->access(c.mat_id, c.parent_index(i, j), true);
    }
}

}  // namespace

void block_mul_acc(BlockView c, BlockView a, BlockView b, cplx alpha,
                   CostStats& stats, MemTracer* tracer) {
  assert(c.rows == a.rows && c.cols == b.cols && a.cols == b.rows);
  const std::size_t p = c.rows, q = c.cols, r = a.cols;
  if (p == 0 || q == 0 || r == 0) return;
  stats.flops += kMulAddFlops * p * q * r;

  if (tracer) {
    mul_acc_traced(c, a, b, alpha, tracer);
    return;
  }

  const std::size_t njt = (q + kTileJ - 1) / kTileJ;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (p * q * r >= kParallelCutoff)
#endif
  for (std::size_t jt = 0; jt < njt; ++jt) {
    const std::size_t j0 = jt * kTileJ, j1 = std::min(q, j0 + kTileJ);
    for (std::size_t i0 = 0; i0 < p; i0 += kTileI) {
      const std::size_t i1 = std::min(p, i0 + kTileI);
      for (std::size_t k0 = 0; k0 < r; k0 += kTileK) {
        const std::size_t k1 = std::min(r, k0 + kTileK);
        for (std::size_t j = j0; j < j1; ++j) {
          cplx* cc = &c.at(0, j);
          for (std::size_t k = k0; k < k1; ++k) {
            const cplx bv = alpha * b.at(k, j);
            const cplx* ac = &a.at(0, k);
            for (std::size_t i = i0; i < i1; ++i) cc[i] += ac[i] * bv;
          }
        }
      }
    }
  }
}

void block_mul_acc_ref(BlockView c, BlockView a, BlockView b, cplx alpha,
                       CostStats& stats) {
  assert(c.rows == a.rows && c.cols == b.cols && a.cols == b.rows);
  stats.flops += kMulAddFlops * c.rows * c.cols * a.cols;
  for (std::size_t j = 0; j < c.cols; ++j)
    for (std::size_t i = 0; i < c.rows; ++i) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < a.cols; ++k) acc += a.at(i, k) * b.at(k, j);
      c.at(i, j) += alpha * acc;
    }
}

void apply_rotation_similarity(TriMatrix& m, const GivensRotation& g,
                               RotSide side, CostStats& stats, bool inverse) {
  const std::size_t n = m.n();
  const std::size_t j = g.position;
  assert(j + 1 < n);
  const double c = g.c;
  const cplx s = inverse ? -g.s : g.s;

  // G = [[c, s], [-conj(s), c]]; left applies G to the row pair, right
  // applies G^* to the column pair. Flipping the sign of s swaps G and G^*.
  if (side == RotSide::Left || side == RotSide::Both) {
    for (std::size_t col = 0; col < n; ++col) {
      const cplx x = m(j, col), y = m(j + 1, col);
      m(j, col) = c * x + s * y;
      m(j + 1, col) = -std::conj(s) * x + c * y;
    }
    stats.flops += n * 2 * (kMulFlops + kMulFlops + kAddFlops);
  }
  if (side == RotSide::Right || side == RotSide::Both) {
    for (std::size_t row = 0; row < n; ++row) {
      const cplx x = m(row, j), y = m(row, j + 1);
      m(row, j) = c * x + std::conj(s) * y;
      m(row, j + 1) = -s * x + c * y;
    }
    stats.flops += n * 2 * (kMulFlops + kMulFlops + kAddFlops);
  }
}

GivensRotation swap_adjacent(TriMatrix& t, std::size_t j, CostStats& stats) {
  assert(j + 1 < t.n());
  const cplx t11 = t(j, j), t22 = t(j + 1, j + 1);
  const cplx f = t(j, j + 1);
  const cplx g = t22 - t11;
  if (g == cplx(0.0, 0.0))
    throw EqualEigenvalues(
        "swap_adjacent: equal diagonal entries at position " +
        std::to_string(j) + "; the 2x2 swap system is singular");

  // The vector (f, g) spans the t22-eigendirection of the 2x2 block; the
  // rotation zeroing its second component triangularizes the swapped form.
  GivensRotation rot;
  rot.position = j;
  const double fn = std::abs(f);
  const double d = std::hypot(fn, std::abs(g));
  if (fn == 0.0) {
    rot.c = 0.0;
    rot.s = cplx(1.0, 0.0);
  } else {
    rot.c = fn / d;
    rot.s = (f / fn) * std::conj(g) / d;
  }

  apply_rotation_similarity(t, rot, RotSide::Both, stats);
  t(j, j) = t22;
  t(j + 1, j + 1) = t11;
  t(j + 1, j) = cplx(0.0, 0.0);  // remove roundoff residue
  ++stats.swaps;
  return rot;
}

}  // namespace trisign
