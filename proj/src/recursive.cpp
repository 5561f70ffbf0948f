#include "trisign/recursive.hpp"

#include <cassert>
#include <cmath>
#include <memory>
#include <string>

#include "trisign/core.hpp"
#include "trisign/kernels.hpp"
#include "trisign/partition.hpp"

namespace trisign {

namespace {

struct Ctx {
  const TriMatrix& t;
  TriMatrix& u;
  TriMatrix* x;  // MM: the X accumulator; AE: the single Z accumulator
  TriMatrix* y;  // MM only
  const NestedPartition& part;
  CostStats& stats;
  MemTracer* tracer;
  RecursiveDebug* dbg;
  std::vector<std::int8_t> dsign;  // +1 / -1 per diagonal position
  std::uint64_t b1 = 0, b2 = 0;
  bool ae = false;

  bool is_leaf(std::size_t level, std::size_t i) const {
    return level == part.depth() ||
           part.eta(level + 1, i) == part.eta(level, i);
  }
};

void dbg_mark_ready(Ctx& c, std::size_t i, std::size_t j) {
  if (c.dbg) c.dbg->u_ready[c.u.index_of(i, j)] = 1;
}

void dbg_check_read(Ctx& c, std::size_t i, std::size_t j) {
  if (c.dbg && !c.dbg->u_ready[c.u.index_of(i, j)]) ++c.dbg->read_before_write;
}

void dbg_check_block_read(Ctx& c, std::size_t r0, std::size_t r1,
                          std::size_t c0, std::size_t c1) {
  if (!c.dbg) return;
  for (std::size_t j = c0; j < c1; ++j)
    for (std::size_t i = r0; i < r1; ++i) dbg_check_read(c, i, j);
}

void leaf_diagonal(Ctx& c, std::size_t i0, std::size_t i1) {
  // Diagonal blocks never receive cross-block updates, so their sums are
  // entirely local: the classic recurrence on the window is all of Alg. 5's
  // base case.
  detail::higham_block(c.t, c.u, i0, i1, c.stats, c.b1, c.b2, c.tracer);
  if (c.dbg)
    for (std::size_t j = i0; j < i1; ++j)
      for (std::size_t i = i0; i <= j; ++i) {
        dbg_mark_ready(c, i, j);
        if (i < j)
          c.dbg->branch_map[c.u.index_of(i, j)] =
              (c.dsign[i] == c.dsign[j]) ? 2 : 1;
      }
}

void dbg_leaf_sums(Ctx& c, std::size_t r, std::size_t col, cplx acc_x,
                   cplx acc_y, bool have_x, bool have_y) {
  // Recompute the accumulated sums by direct summation over the full k
  // range using the (by now final) entries of U.
  cplx dx(0.0, 0.0), dy(0.0, 0.0);
  double scale = 0.0;
  for (std::size_t k = r + 1; k < col; ++k) {
    dbg_check_read(c, r, k);
    dbg_check_read(c, k, col);
    const cplx x_term = c.u(r, k) * c.t(k, col) - c.t(r, k) * c.u(k, col);
    const cplx y_term = c.u(r, k) * c.u(k, col);
    dx += x_term;
    dy += y_term;
    scale += std::abs(x_term) + std::abs(y_term);
  }
  scale = std::max(1.0, scale);
  if (have_x)
    c.dbg->max_accumulator_dev =
        std::max(c.dbg->max_accumulator_dev, std::abs(acc_x - dx) / scale);
  if (have_y)
    c.dbg->max_accumulator_dev =
        std::max(c.dbg->max_accumulator_dev, std::abs(acc_y - dy) / scale);
}

void leaf_offdiagonal(Ctx& c, std::size_t i0, std::size_t i1, std::size_t j0,
                      std::size_t j1) {
  const TriMatrix& t = c.t;
  TriMatrix& u = c.u;
  for (std::size_t col = j0; col < j1; ++col) {
    for (std::size_t r = i1; r-- > i0;) {
      const bool same_sign = c.dsign[r] == c.dsign[col];

      // Local partial sums over the leaf's own index ranges; everything
      // strictly between the two leaf blocks is already in the accumulators.
      cplx xloc(0.0, 0.0), yloc(0.0, 0.0);
      const bool want_x = !same_sign || !c.ae;
      const bool want_y = same_sign || !c.ae;
      std::uint64_t mloc = 0;
      auto local_k = [&](std::size_t k) {
        if (c.dbg) {
          dbg_check_read(c, r, k);
          dbg_check_read(c, k, col);
        }
        if (want_x) {
          if (c.tracer) {
            c.tracer->access(kTraceU, u.index_of(r, k), false);
            c.tracer->access(kTraceT, t.index_of(k, col), false);
            c.tracer->access(kTraceT, t.index_of(r, k), false);
            c.tracer->access(kTraceU, u.index_of(k, col), false);
          }
          xloc += u(r, k) * t(k, col) - t(r, k) * u(k, col);
        }
        if (want_y) {
          if (c.tracer) {
            c.tracer->access(kTraceU, u.index_of(r, k), false);
            c.tracer->access(kTraceU, u.index_of(k, col), false);
          }
          yloc += u(r, k) * u(k, col);
        }
        ++mloc;
      };
      for (std::size_t k = r + 1; k < i1; ++k) local_k(k);
      for (std::size_t k = j0; k < col; ++k) local_k(k);
      c.stats.flops += mloc * ((want_x ? 2 * kMulAddFlops : 0) +
                               (want_y ? kMulAddFlops : 0));

      // Fold in the accumulated cross-block sums.
      cplx acc_x(0.0, 0.0), acc_y(0.0, 0.0);
      if (want_x) {
        if (c.tracer) c.tracer->access(kTraceX, c.x->index_of(r, col), false);
        acc_x = (*c.x)(r, col) + xloc;
      }
      if (want_y) {
        TriMatrix* ym = c.ae ? c.x : c.y;
        if (c.tracer)
          c.tracer->access(c.ae ? kTraceX : kTraceY, ym->index_of(r, col),
                           false);
        acc_y = (*ym)(r, col) + yloc;
      }
      if (c.dbg) dbg_leaf_sums(c, r, col, acc_x, acc_y, want_x, want_y);

      if (same_sign) {
        u(r, col) = -acc_y / (u(r, r) + u(col, col));
        c.stats.flops += kDivFlops + kAddFlops;
        ++c.b2;
      } else {
        const cplx denom = t(r, r) - t(col, col);
        assert(denom != cplx(0.0, 0.0));
        if (c.tracer) c.tracer->access(kTraceT, t.index_of(r, col), false);
        u(r, col) = (t(r, col) * (u(r, r) - u(col, col)) + acc_x) / denom;
        c.stats.flops += kMulFlops + kAddFlops * 2 + kDivFlops;
        ++c.b1;
      }
      if (c.tracer) c.tracer->access(kTraceU, u.index_of(r, col), true);
      dbg_mark_ready(c, r, col);
      if (c.dbg) c.dbg->branch_map[u.index_of(r, col)] = same_sign ? 2 : 1;
    }
  }
}

/// Accumulates, into the (r, c) window, the contribution of the k window:
/// MM updates both X and Y with block multiplies; AE updates Z with the
/// per-element branch kernel.
void update_block(Ctx& c, std::size_t r0, std::size_t r1, std::size_t c0,
                  std::size_t c1, std::size_t k0, std::size_t k1) {
  if (r0 >= r1 || c0 >= c1 || k0 >= k1) return;
  dbg_check_block_read(c, r0, r1, k0, k1);
  dbg_check_block_read(c, k0, k1, c0, c1);

  if (!c.ae) {
    BlockView xv = view(*c.x, r0, r1, c0, c1, kTraceX);
    BlockView yv = view(*c.y, r0, r1, c0, c1, kTraceY);
    BlockView u_rk = view(c.u, r0, r1, k0, k1, kTraceU);
    BlockView t_kc = view(c.t, k0, k1, c0, c1, kTraceT);
    BlockView t_rk = view(c.t, r0, r1, k0, k1, kTraceT);
    BlockView u_kc = view(c.u, k0, k1, c0, c1, kTraceU);
    block_mul_acc(xv, u_rk, t_kc, cplx(1.0, 0.0), c.stats, c.tracer);
    block_mul_acc(xv, t_rk, u_kc, cplx(-1.0, 0.0), c.stats, c.tracer);
    block_mul_acc(yv, u_rk, u_kc, cplx(1.0, 0.0), c.stats, c.tracer);
    return;
  }

  // AE kernel: column by column, branch hoisted per element, no block
  // multiply. Computes only the sum the leaf formula will consume.
  TriMatrix& z = *c.x;
  std::uint64_t n_same = 0, n_diff = 0;
  for (std::size_t col = c0; col < c1; ++col) {
    for (std::size_t r = r0; r < r1; ++r) {
      cplx acc(0.0, 0.0);
      if (c.dsign[r] == c.dsign[col]) {
        for (std::size_t k = k0; k < k1; ++k) {
          if (c.tracer) {
            c.tracer->access(kTraceU, c.u.index_of(r, k), false);
            c.tracer->access(kTraceU, c.u.index_of(k, col), false);
          }
          acc += c.u(r, k) * c.u(k, col);
        }
        ++n_same;
      } else {
        for (std::size_t k = k0; k < k1; ++k) {
          if (c.tracer) {
            c.tracer->access(kTraceU, c.u.index_of(r, k), false);
            c.tracer->access(kTraceT, c.t.index_of(k, col), false);
            c.tracer->access(kTraceT, c.t.index_of(r, k), false);
            c.tracer->access(kTraceU, c.u.index_of(k, col), false);
          }
          acc += c.u(r, k) * c.t(k, col) - c.t(r, k) * c.u(k, col);
        }
        ++n_diff;
      }
      if (c.tracer) c.tracer->access(kTraceX, z.index_of(r, col), false);
      z(r, col) += acc;
      if (c.tracer) c.tracer->access(kTraceX, z.index_of(r, col), true);
    }
  }
  c.stats.flops +=
      (k1 - k0) * (n_same * kMulAddFlops + n_diff * 2 * kMulAddFlops);
}

void sign_offdiagonal(Ctx& c, std::size_t level, std::size_t i, std::size_t j);

void sign_diagonal(Ctx& c, std::size_t level, std::size_t i) {
  const std::size_t iend = c.part.eta(level, i);
  if (i >= iend) return;
  if (c.is_leaf(level, i)) {
    leaf_diagonal(c, i, iend);
    return;
  }
  const std::size_t im = c.part.eta(level + 1, i);
  sign_diagonal(c, level + 1, i);
  sign_diagonal(c, level + 1, im);
  // The two children are adjacent, so the off-diagonal block has no
  // intermediate k blocks and needs no accumulator update first.
  sign_offdiagonal(c, level + 1, i, im);
}

void sign_offdiagonal(Ctx& c, std::size_t level, std::size_t i,
                      std::size_t j) {
  const std::size_t iend = c.part.eta(level, i);
  const std::size_t jend = c.part.eta(level, j);
  if (i >= iend || j >= jend) return;
  if (c.is_leaf(level, i) && c.is_leaf(level, j)) {
    leaf_offdiagonal(c, i, iend, j, jend);
    return;
  }
  assert(level < c.part.depth());
  const std::size_t im = c.part.eta(level + 1, i);  // == iend if rows are a leaf
  const std::size_t jm = c.part.eta(level + 1, j);

  // When a side does not split (its block is already a leaf at level+1),
  // im == iend or jm == jend and the sub-blocks starting there are empty;
  // skipping those calls keeps every remaining start a valid level+1 start.
  const bool rsplit = im < iend;
  const bool csplit = jm < jend;

  // The interleave: every U block an update reads is final by then.
  if (rsplit) sign_offdiagonal(c, level + 1, im, j);
  update_block(c, i, im, j, jm, im, iend);
  sign_offdiagonal(c, level + 1, i, j);
  update_block(c, im, iend, jm, jend, j, jm);
  if (rsplit && csplit) sign_offdiagonal(c, level + 1, im, jm);
  update_block(c, i, im, jm, jend, im, iend);
  update_block(c, i, im, jm, jend, j, jm);
  if (csplit) sign_offdiagonal(c, level + 1, i, jm);
}

SignResult run_recursive(const TriMatrix& t, std::size_t base, bool ae,
                         MemTracer* tracer, RecursiveDebug* debug) {
  const std::size_t n = t.n();
  assert(base >= 1);
  const NestedPartition part = make_partition(n, base);

  SignResult res{TriMatrix(n), {}, 0, 0};
  TriMatrix x(n);
  std::unique_ptr<TriMatrix> y;
  if (!ae) y = std::make_unique<TriMatrix>(n);

  Ctx ctx{t, res.u, &x, y.get(), part, res.stats, tracer, debug, {}, 0, 0, ae};
  ctx.dsign.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (t(i, i).real() == 0.0)
      throw PureImaginaryEigenvalue(
          "sign_recursive: zero real part on the diagonal at " +
          std::to_string(i));
    ctx.dsign[i] = t(i, i).real() > 0.0 ? 1 : -1;
  }
  if (debug) {
    debug->u_ready.assign(n * n, 0);
    debug->branch_map.assign(n * n, 0);
  }

  sign_diagonal(ctx, 0, 0);
  res.branch_eq1 = ctx.b1;
  res.branch_eq2 = ctx.b2;
  return res;
}

}  // namespace

SignResult sign_recursive_mm(const TriMatrix& t, std::size_t base,
                             MemTracer* tracer, RecursiveDebug* debug) {
  return run_recursive(t, base, /*ae=*/false, tracer, debug);
}

SignResult sign_recursive_ae(const TriMatrix& t, std::size_t base,
                             MemTracer* tracer, RecursiveDebug* debug) {
  return run_recursive(t, base, /*ae=*/true, tracer, debug);
}

}  // namespace trisign
