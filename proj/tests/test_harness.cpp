#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "trisign/classic.hpp"
#include "trisign/core.hpp"
#include "trisign/harness.hpp"

using namespace trisign;

TEST_CASE("gen_triangular: exact inertia, determinism, structure") {
  for (std::size_t n : {1u, 2u, 17u, 64u}) {
    for (std::size_t k : {std::size_t(0), n / 2, n}) {
      TriMatrix t = gen_triangular({.n = n, .k = k, .seed = 123});
      CHECK(t.strictly_lower_is_zero());
      CHECK(t.all_finite());
      const Inertia in = inertia_of(t);
      CHECK(in.n_minus == k);
      CHECK(in.n_plus == n - k);
      // pairwise diagonal gaps respect the floor
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          CHECK(std::abs(t(i, i) - t(j, j)) >= 0.05 * (1.0 - 1e-12));
      // same seed, same matrix; different seed, different matrix
      TriMatrix t2 = gen_triangular({.n = n, .k = k, .seed = 123});
      CHECK(frobenius_distance(t, t2) == 0.0);
      if (n > 1) {
        TriMatrix t3 = gen_triangular({.n = n, .k = k, .seed = 124});
        CHECK(frobenius_distance(t, t3) > 0.0);
      }
    }
  }
}

TEST_CASE("gen_triangular: unforced signs and infeasible gaps") {
  TriMatrix t = gen_triangular({.n = 32, .seed = 5});
  const Inertia in = inertia_of(t);
  CHECK(in.n_minus + in.n_plus == 32);
  CHECK_THROWS_AS(
      gen_triangular({.n = 100, .k = 50, .seed = 1, .range = 1.0, .gap_floor = 1.0}),
      GapInfeasible);
}

TEST_CASE("oracle_sign: hand example [[1,3],[0,-2]]") {
  TriMatrix t(2);
  t(0, 0) = 1;
  t(0, 1) = 3;
  t(1, 1) = -2;
  TriMatrix u = oracle_sign(t);
  CHECK(std::abs(u(0, 0) - cplx(1, 0)) <= 1e-15);
  CHECK(std::abs(u(1, 1) - cplx(-1, 0)) <= 1e-15);
  CHECK(std::abs(u(0, 1) - cplx(2, 0)) <= 1e-14);
}

TEST_CASE("oracle_sign satisfies the defining identities on its own") {
  TriMatrix t = gen_triangular({.n = 32, .k = 13, .seed = 31});
  TriMatrix u = oracle_sign(t);
  auto [inv, comm] = residuals(t, u);
  CHECK(inv <= 1e-10);
  CHECK(comm <= 1e-10);
  for (std::size_t i = 0; i < 32; ++i)
    CHECK(u(i, i) == scalar_sign(t(i, i)));
}

TEST_CASE("residuals: exact involution gives zero, perturbation does not") {
  TriMatrix t(2);
  t(0, 0) = 1;
  t(0, 1) = 3;
  t(1, 1) = -2;
  TriMatrix u(2);
  u(0, 0) = 1;
  u(0, 1) = 2;
  u(1, 1) = -1;
  auto [inv, comm] = residuals(t, u);
  CHECK(inv == 0.0);
  CHECK(comm == 0.0);
  u(0, 0) = 1.25;  // breaks both U^2 = I and UT = TU
  auto [inv2, comm2] = residuals(t, u);
  CHECK(inv2 > 1e-3);
  CHECK(comm2 > 1e-3);
}

TEST_CASE("LruCacheSim: cold misses, hits, dirty flush") {
  // Capacity two lines of one word each.
  LruCacheSim sim({.m_words = 2, .b_words = 1});
  sim.access(kTraceT, 0, false);  // miss
  sim.access(kTraceT, 0, false);  // hit
  sim.access(kTraceT, 1, true);   // miss, dirtied
  sim.access(kTraceT, 2, false);  // miss, evicts clean line 0
  sim.access(kTraceT, 1, false);  // hit
  CHECK(sim.finish() == 3 + 1);   // 3 misses + 1 dirty flush
}

TEST_CASE("LruCacheSim: line granularity and eviction writeback") {
  LruCacheSim sim({.m_words = 4, .b_words = 2});  // two lines of two words
  sim.access(kTraceT, 0, true);   // miss line {0,1}
  sim.access(kTraceT, 1, false);  // hit
  sim.access(kTraceT, 2, false);  // miss line {2,3}
  sim.access(kTraceT, 4, false);  // miss, evicts dirty {0,1}: +2 write words
  CHECK(sim.finish() == 2 * 3 + 2);
}

TEST_CASE("cache traffic is monotone non-increasing in capacity") {
  TriMatrix t = gen_triangular({.n = 64, .k = 25, .seed = 9});
  std::uint64_t prev = ~0ull;
  for (std::uint64_t m : {64ull, 256ull, 1024ull, 65536ull}) {
    LruCacheSim sim({.m_words = m, .b_words = 1});
    SignResult r = parlett_higham_sign(t, &sim);
    const std::uint64_t w = sim.finish();
    CHECK(w <= prev);
    prev = w;
    // traced run computes the same matrix (up to FMA contraction in the
    // untraced, vectorized loops)
    SignResult plain = parlett_higham_sign(t);
    CHECK(relative_distance(r.u, plain.u) <= 1e-12);
  }
  // a cache big enough for everything transfers one cold load per word
  // touched plus one flush per word written
  LruCacheSim big({.m_words = 1u << 22, .b_words = 1});
  parlett_higham_sign(t, &big);
  const std::uint64_t upper = 2ull * 2ull * 64ull * 65ull / 2ull;
  CHECK(big.finish() <= upper);
}

TEST_CASE("algorithm tags round-trip") {
  for (Algorithm a : {Algorithm::Parlett, Algorithm::Higham, Algorithm::Sylvester,
                      Algorithm::RecursiveMM, Algorithm::RecursiveAE}) {
    auto back = parse_algorithm_tag(algorithm_tag(a));
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
  CHECK_FALSE(parse_algorithm_tag("nope").has_value());
}

TEST_CASE("sign_inversions: hand patterns") {
  auto with_signs = [](const std::vector<int>& sg) {
    TriMatrix t(sg.size());
    for (std::size_t i = 0; i < sg.size(); ++i)
      t(i, i) = cplx(double(sg[i]) * (1.0 + double(i)), 0.0);
    return t;
  };
  CHECK(sign_inversions(with_signs({-1, -1, 1, 1})) == 0);
  CHECK(sign_inversions(with_signs({1, -1})) == 1);
  CHECK(sign_inversions(with_signs({1, 1, -1, -1})) == 4);
  CHECK(sign_inversions(with_signs({1, -1, 1, -1, 1, -1})) == 3 + 2 + 1);
  CHECK(sign_inversions(with_signs({1, 1, 1, -1, -1, -1})) == 3 * 3);
}

TEST_CASE("choose_algorithm: tiny inertia favors Sylvester, balanced favors MM") {
  // With equal unit costs the decision is purely the operation-count
  // comparison: k = 2 makes the Sylvester estimate O(n^2 k + n n_minus n_plus)
  // beat 4n^3, while a balanced spectrum's cross term alone exceeds it.
  CostModel m{.elem_unit_s = 1e-9, .mm_unit_s = 1e-9};
  TriMatrix small_k = gen_triangular({.n = 512, .k = 2, .seed = 40});
  CHECK(choose_algorithm(small_k, m) == Algorithm::Sylvester);

  TriMatrix bal = gen_triangular({.n = 256, .k = 128, .seed = 41});
  CHECK(choose_algorithm(bal, m) == Algorithm::RecursiveMM);
}

TEST_CASE("cost model persists through JSON") {
  CostModel m{.elem_unit_s = 3.5e-10, .mm_unit_s = 1.25e-11};
  const std::string path = "cost_model_test.json";
  save_cost_model(m, path);
  auto back = load_cost_model(path);
  REQUIRE(back.has_value());
  CHECK(back->elem_unit_s == m.elem_unit_s);
  CHECK(back->mm_unit_s == m.mm_unit_s);
  CHECK_FALSE(load_cost_model("does_not_exist.json").has_value());
  std::remove(path.c_str());
}
