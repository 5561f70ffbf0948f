#include "trisign/sylvester.hpp"

#include <cassert>
#include <cmath>
#include <iostream>
#include <string>

#include "trisign/core.hpp"

namespace trisign {

namespace {

constexpr std::size_t kSylvesterLeaf = 8;

void sylvester_leaf(BlockView a, BlockView b, BlockView c, CostStats& stats) {
  const std::size_t p = a.rows, q = b.rows;
  bool warned = false;
  for (std::size_t j = 0; j < q; ++j) {
    // Fold the already-solved columns into this one's right-hand side:
    // A F_j - F_j b_jj = C_j + sum_{l<j} F_l b_lj.
    for (std::size_t l = 0; l < j; ++l) {
      const cplx blj = b.at(l, j);
      for (std::size_t i = 0; i < p; ++i) c.at(i, j) += c.at(i, l) * blj;
    }
    stats.flops += kMulAddFlops * p * j;

    for (std::size_t i = p; i-- > 0;) {
      cplx rhs = c.at(i, j);
      for (std::size_t k = i + 1; k < p; ++k) rhs -= a.at(i, k) * c.at(k, j);
      const cplx denom = a.at(i, i) - b.at(j, j);
      const double scale =
          std::max(std::abs(a.at(i, i)), std::abs(b.at(j, j)));
      if (denom == cplx(0.0, 0.0))
        throw SingularSylvester(
            "solve_tri_sylvester: a_ii == b_jj, spectra overlap");
      if (!warned && std::abs(denom) < 1e-12 * scale) {
        std::cerr << "trisign: warning: near-singular Sylvester equation, "
                     "|a_ii - b_jj| < 1e-12 * max(|a_ii|,|b_jj|)\n";
        warned = true;
      }
      c.at(i, j) = rhs / denom;
      stats.flops += kMulAddFlops * (p - i - 1) + kDivFlops;
    }
  }
}

BlockView sub(BlockView v, std::size_t r0, std::size_t r1, std::size_t c0,
              std::size_t c1) {
  assert(r1 <= v.rows && c1 <= v.cols);
  return BlockView{v.base + c0 * v.ld + r0, v.ld,    r1 - r0,   c1 - c0,
                   v.mat_id,               v.row0 + r0, v.col0 + c0};
}

}  // namespace

void solve_tri_sylvester(BlockView a, BlockView b, BlockView c,
                         CostStats& stats) {
  assert(a.rows == a.cols && b.rows == b.cols);
  assert(c.rows == a.rows && c.cols == b.rows);
  const std::size_t p = a.rows, q = b.rows;
  if (p == 0 || q == 0) return;

  if (std::max(p, q) <= kSylvesterLeaf) {
    sylvester_leaf(a, b, c, stats);
    return;
  }

  if (p >= q) {
    // Split the rows: the bottom half has no dependency, solve it first,
    // then fold A12 * F2 out of the top half's right-hand side.
    const std::size_t h = p / 2;
    solve_tri_sylvester(sub(a, h, p, h, p), b, sub(c, h, p, 0, q), stats);
    block_mul_acc(sub(c, 0, h, 0, q), sub(a, 0, h, h, p), sub(c, h, p, 0, q),
                  cplx(-1.0, 0.0), stats);
    solve_tri_sylvester(sub(a, 0, h, 0, h), b, sub(c, 0, h, 0, q), stats);
  } else {
    // Split the columns: the left half has no dependency.
    const std::size_t h = q / 2;
    solve_tri_sylvester(a, sub(b, 0, h, 0, h), sub(c, 0, p, 0, h), stats);
    block_mul_acc(sub(c, 0, p, h, q), sub(c, 0, p, 0, h), sub(b, 0, h, h, q),
                  cplx(1.0, 0.0), stats);
    solve_tri_sylvester(a, sub(b, h, q, h, q), sub(c, 0, p, h, q), stats);
  }
}

ReorderPlan reorder_by_sign(TriMatrix& t, CostStats& stats) {
  inertia_of(t);  // rejects zero real parts up front
  const std::size_t n = t.n();
  ReorderPlan plan;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (t(j, j).real() > 0.0 && t(j + 1, j + 1).real() < 0.0) {
        plan.rotations.push_back(swap_adjacent(t, j, stats));
        changed = true;
      }
    }
  }
  return plan;
}

SignResult parlett_sylvester_sign(const TriMatrix& t) {
  const std::size_t n = t.n();
  SignResult res{TriMatrix(n), {}, 0, 0};
  const Inertia in = inertia_of(t);

  if (in.n_minus == 0 || in.n_plus == 0) {
    const cplx d(in.n_minus == 0 ? 1.0 : -1.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) res.u(i, i) = d;
    return res;
  }

  TriMatrix tt = t;
  const ReorderPlan plan = reorder_by_sign(tt, res.stats);
  const std::size_t nm = in.n_minus;

  for (std::size_t i = 0; i < n; ++i)
    res.u(i, i) = cplx(i < nm ? -1.0 : 1.0, 0.0);

  // U~12 solves T~11 F - F T~22 = -2 T~12 (see header for the derivation).
  BlockView u12 = view(res.u, 0, nm, nm, n, kTraceU);
  for (std::size_t j = 0; j < u12.cols; ++j)
    for (std::size_t i = 0; i < u12.rows; ++i)
      u12.at(i, j) = -2.0 * tt(i, nm + j);
  solve_tri_sylvester(view(tt, 0, nm, 0, nm, kTraceT),
                      view(tt, nm, n, nm, n, kTraceT), u12, res.stats);

  // Transport back through the rotations in reverse (inverse similarity).
  // The lower triangle fills transiently and is re-zeroed with a residue
  // check; the exact result is triangular again once all rotations undo.
  for (auto it = plan.rotations.rbegin(); it != plan.rotations.rend(); ++it)
    apply_rotation_similarity(res.u, *it, RotSide::Both, res.stats,
                              /*inverse=*/true);
  const double residue = res.u.zero_strict_lower();
  const double norm = res.u.frobenius_norm();
  if (residue > 1e-12 * std::max(1.0, norm))
    throw NumericalError(
        "parlett_sylvester_sign: back-transport left lower-triangular "
        "residue " +
        std::to_string(residue));
  return res;
}

TriMatrix block_parlett_sylvester(const TriMatrix& t,
                                  const std::vector<std::size_t>& starts,
                                  const BlockFunction& diag_fn,
                                  CostStats& stats) {
  const std::size_t n = t.n();
  const std::size_t m = starts.size();
  assert(m >= 1 && starts[0] == 0);
  auto start = [&](std::size_t b) { return b < m ? starts[b] : n; };

  TriMatrix f(n);
  for (std::size_t b = 0; b < m; ++b)
    diag_fn(view(t, start(b), start(b + 1), start(b), start(b + 1), kTraceT),
            view(f, start(b), start(b + 1), start(b), start(b + 1), kTraceU),
            b);

  TriMatrix scratch(n);  // right-hand sides, block at a time
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      const std::size_t r0 = start(i), r1 = start(i + 1);
      const std::size_t c0 = start(j), c1 = start(j + 1);
      BlockView rhs = view(scratch, r0, r1, c0, c1, kTraceX);
      for (std::size_t c = 0; c < rhs.cols; ++c)
        for (std::size_t r = 0; r < rhs.rows; ++r) rhs.at(r, c) = cplx(0.0, 0.0);

      // F_ii T_ij - T_ij F_jj + sum_k (F_ik T_kj - T_ik F_kj)
      block_mul_acc(rhs, view(f, r0, r1, r0, r1, kTraceU),
                    view(t, r0, r1, c0, c1, kTraceT), cplx(1.0, 0.0), stats);
      block_mul_acc(rhs, view(t, r0, r1, c0, c1, kTraceT),
                    view(f, c0, c1, c0, c1, kTraceU), cplx(-1.0, 0.0), stats);
      for (std::size_t k = i + 1; k < j; ++k) {
        const std::size_t k0 = start(k), k1 = start(k + 1);
        block_mul_acc(rhs, view(f, r0, r1, k0, k1, kTraceU),
                      view(t, k0, k1, c0, c1, kTraceT), cplx(1.0, 0.0), stats);
        block_mul_acc(rhs, view(t, r0, r1, k0, k1, kTraceT),
                      view(f, k0, k1, c0, c1, kTraceU), cplx(-1.0, 0.0), stats);
      }

      solve_tri_sylvester(view(t, r0, r1, r0, r1, kTraceT),
                          view(t, c0, c1, c0, c1, kTraceT), rhs, stats);
      for (std::size_t c = 0; c < rhs.cols; ++c)
        for (std::size_t r = 0; r < rhs.rows; ++r)
          f(r0 + r, c0 + c) = rhs.at(r, c);
    }
  }
  return f;
}

}  // namespace trisign
