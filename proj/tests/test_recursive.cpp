#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trisign/harness.hpp"
#include "trisign/recursive.hpp"

using namespace trisign;

TEST_CASE("recursive variants with n <= base equal the classic recurrence exactly") {
  TriMatrix t = gen_triangular({.n = 10, .k = 4, .seed = 1});
  SignResult ref = parlett_higham_sign(t);
  for (auto* fn : {&sign_recursive_mm, &sign_recursive_ae}) {
    SignResult r = fn(t, 16, nullptr, nullptr);
    CHECK(frobenius_distance(r.u, ref.u) == 0.0);  // same code path bitwise
    CHECK(r.branch_eq1 == ref.branch_eq1);
    CHECK(r.branch_eq2 == ref.branch_eq2);
  }
}

TEST_CASE("3x3 with base 1: full interleaved recursion, hand-checkable") {
  TriMatrix t(3);
  t(0, 0) = 2;
  t(1, 1) = -1;
  t(2, 2) = 3;
  t(0, 1) = 1;
  t(0, 2) = -2;
  t(1, 2) = 4;
  SignResult ref = parlett_higham_sign(t);
  for (auto* fn : {&sign_recursive_mm, &sign_recursive_ae}) {
    SignResult r = fn(t, 1, nullptr, nullptr);
    CHECK(relative_distance(r.u, ref.u) <= 1e-14);
    // u01 = 1*(1-(-1))/(2-(-1)) = 2/3; u12 = 4*(-1-1)/(-1-3) = 2
    CHECK(std::abs(r.u(0, 1) - cplx(2.0 / 3.0, 0)) <= 1e-14);
    CHECK(std::abs(r.u(1, 2) - cplx(2, 0)) <= 1e-14);
  }
}

TEST_CASE("MM, AE and classic agree across sizes, bases and inertias") {
  for (std::size_t n : {17u, 40u, 65u, 128u}) {
    for (std::size_t base : {1u, 4u, 16u, 37u}) {
      TriMatrix t = gen_triangular({.n = n, .k = n / 3, .seed = n + base});
      SignResult ref = parlett_higham_sign(t);
      SignResult mm = sign_recursive_mm(t, base);
      SignResult ae = sign_recursive_ae(t, base);
      CAPTURE(n);
      CAPTURE(base);
      CHECK(relative_distance(mm.u, ref.u) <= 1e-9);
      CHECK(relative_distance(ae.u, ref.u) <= 1e-9);
      CHECK(mm.u.strictly_lower_is_zero());
      CHECK(ae.u.strictly_lower_is_zero());
      auto [inv, comm] = residuals(t, mm.u);
      CHECK(inv <= 1e-10);
      CHECK(comm <= 1e-10);
      CHECK(mm.branch_eq1 + mm.branch_eq2 == n * (n - 1) / 2);
      CHECK(mm.branch_eq1 == ref.branch_eq1);
      CHECK(ae.branch_eq1 == ref.branch_eq1);
    }
  }
}

TEST_CASE("MM flop total is close to 4 n^3 units for small bases") {
  const std::size_t n = 512, base = 16;
  TriMatrix t = gen_triangular({.n = n, .k = n / 2, .seed = 77});
  SignResult mm = sign_recursive_mm(t, base);
  const double units = double(mm.stats.flops) / (4.0 * double(n) * n * n);
  CHECK(units == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("AE flop total is about half of MM on a balanced spectrum") {
  const std::size_t n = 512, base = 16;
  TriMatrix t = gen_triangular({.n = n, .k = n / 2, .seed = 78});
  SignResult mm = sign_recursive_mm(t, base);
  SignResult ae = sign_recursive_ae(t, base);
  const double ratio = double(ae.stats.flops) / double(mm.stats.flops);
  CHECK(ratio > 0.3);
  CHECK(ratio < 0.6);
}

TEST_CASE("debug instrumentation: no early reads, tiny accumulator drift") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const std::size_t n = 96, base = 8;
    TriMatrix t = gen_triangular({.n = n, .k = 30, .seed = seed});
    for (auto* fn : {&sign_recursive_mm, &sign_recursive_ae}) {
      RecursiveDebug dbg;
      SignResult r = fn(t, base, nullptr, &dbg);
      CHECK(dbg.read_before_write == 0);
      CHECK(dbg.max_accumulator_dev <= 1e-12);
      // every upper-triangle entry was finalized
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i)
          CHECK(dbg.u_ready[j * n + i] == 1);
      // and the branch map matches the classic decision rule
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          const bool same = (t(i, i).real() > 0) == (t(j, j).real() > 0);
          CHECK(dbg.branch_map[j * n + i] == (same ? 2 : 1));
        }
      auto [inv, comm] = residuals(t, r.u);
      CHECK(inv <= 1e-10);
      CHECK(comm <= 1e-10);
    }
  }
}

TEST_CASE("uneven sizes: n not a power of two, base not dividing n") {
  for (auto [n, base] : std::vector<std::pair<std::size_t, std::size_t>>{
           {5, 2}, {100, 7}, {129, 16}, {250, 33}}) {
    TriMatrix t = gen_triangular({.n = n, .k = 2 * n / 5, .seed = 3 * n + base});
    SignResult ref = parlett_higham_sign(t);
    SignResult mm = sign_recursive_mm(t, base);
    SignResult ae = sign_recursive_ae(t, base);
    CAPTURE(n);
    CAPTURE(base);
    CHECK(relative_distance(mm.u, ref.u) <= 1e-9);
    CHECK(relative_distance(ae.u, ref.u) <= 1e-9);
  }
}
