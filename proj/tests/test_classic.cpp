#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trisign/classic.hpp"
#include "trisign/core.hpp"
#include "trisign/harness.hpp"

using namespace trisign;

namespace {

bool close(cplx a, cplx b, double tol = 1e-14) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("parlett_function: sign of [[2,1],[0,-1]]") {
  TriMatrix t(2);
  t(0, 0) = 2;
  t(0, 1) = 1;
  t(1, 1) = -1;
  CostStats s;
  TriMatrix u = parlett_function(t, scalar_sign, s);
  // u01 = t01 (phi(t00)-phi(t11)) / (t00-t11) = 1 * (1 - (-1)) / 3 = 2/3
  CHECK(close(u(0, 0), cplx(1, 0)));
  CHECK(close(u(1, 1), cplx(-1, 0)));
  CHECK(close(u(0, 1), cplx(2.0 / 3.0, 0)));
  CHECK(s.flops > 0);
}

TEST_CASE("parlett_function: sign of [[1,3],[0,-2]]") {
  TriMatrix t(2);
  t(0, 0) = 1;
  t(0, 1) = 3;
  t(1, 1) = -2;
  CostStats s;
  TriMatrix u = parlett_function(t, scalar_sign, s);
  CHECK(close(u(0, 1), cplx(2, 0)));  // 3 * 2 / 3
}

TEST_CASE("parlett_function: 3x3 hand example against oracle") {
  TriMatrix t(3);
  t(0, 0) = cplx(3, 1);
  t(1, 1) = cplx(-1, 0);
  t(2, 2) = cplx(2, -2);
  t(0, 1) = cplx(1, 0);
  t(0, 2) = cplx(0, 2);
  t(1, 2) = cplx(-4, 1);
  CostStats s;
  TriMatrix u = parlett_function(t, scalar_sign, s);
  TriMatrix ref = oracle_sign(t);
  CHECK(relative_distance(u, ref) <= 1e-14);
  auto [inv, comm] = residuals(t, u);
  CHECK(inv <= 1e-14);
  CHECK(comm <= 1e-14);
}

TEST_CASE("parlett_function with identity phi reproduces T") {
  TriMatrix t = gen_triangular({.n = 24, .k = 10, .seed = 5, .gap_floor = 1.0});
  CostStats s;
  TriMatrix u = parlett_function(t, [](cplx z) { return z; }, s);
  CHECK(relative_distance(u, t) <= 1e-10);
}

TEST_CASE("parlett_function rejects repeated eigenvalues") {
  TriMatrix t(3);
  t(0, 0) = cplx(1, 2);
  t(1, 1) = cplx(3, 0);
  t(2, 2) = cplx(1, 2);
  t(0, 2) = 1;
  CostStats s;
  CHECK_THROWS_AS(parlett_function(t, scalar_sign, s), RepeatedEigenvalue);
}

TEST_CASE("parlett_higham_sign: all-positive spectrum gives I") {
  TriMatrix t = gen_triangular({.n = 12, .k = 0, .seed = 3});
  SignResult r = parlett_higham_sign(t);
  for (std::size_t j = 0; j < 12; ++j)
    for (std::size_t i = 0; i <= j; ++i)
      CHECK(close(r.u(i, j), i == j ? cplx(1, 0) : cplx(0, 0)));
  CHECK(r.branch_eq1 == 0);
  CHECK(r.branch_eq2 == 12 * 11 / 2);
}

TEST_CASE("parlett_higham_sign agrees with parlett_function and the oracle") {
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    TriMatrix t = gen_triangular({.n = 40, .k = 17, .seed = seed});
    CostStats s;
    TriMatrix up = parlett_function(t, scalar_sign, s);
    SignResult rh = parlett_higham_sign(t);
    CHECK(relative_distance(rh.u, up) <= 1e-9);
    CHECK(relative_distance(rh.u, oracle_sign(t)) <= 1e-9);
    auto [inv, comm] = residuals(t, rh.u);
    CHECK(inv <= 1e-11);
    CHECK(comm <= 1e-11);
    CHECK(rh.branch_eq1 + rh.branch_eq2 == 40 * 39 / 2);
    CHECK(rh.branch_eq1 > 0);
    CHECK(rh.branch_eq2 > 0);
  }
}

TEST_CASE("parlett_higham_sign: involution and commutation by construction") {
  TriMatrix t = gen_triangular({.n = 64, .k = 20, .seed = 9});
  SignResult r = parlett_higham_sign(t);
  auto [inv, comm] = residuals(t, r.u);
  CHECK(inv <= 1e-11);
  CHECK(comm <= 1e-11);
  CHECK(r.u.strictly_lower_is_zero());
}

TEST_CASE("higham flop count: same-sign spectrum is one inner product per element") {
  // With every diagonal sign equal, all n(n-1)/2 elements take the U^2 = I
  // branch: one length-(j-i-1) inner product plus one divide and subtract.
  const std::size_t n = 16;
  TriMatrix t = gen_triangular({.n = n, .k = 0, .seed = 11});
  SignResult r = parlett_higham_sign(t);
  std::uint64_t expect = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const std::uint64_t m = j - i - 1;
      expect += kMulAddFlops * m + kDivFlops + kAddFlops;
    }
  CHECK(r.stats.flops == expect);
}
