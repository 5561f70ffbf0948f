#include "trisign/harness.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "trisign/classic.hpp"
#include "trisign/kernels.hpp"

namespace trisign {

namespace {

/// Uniform doubles built from the top 53 bits of mt19937_64 output, so the
/// stream is bit-identical everywhere (std::uniform_real_distribution is
/// not specified tightly enough for that).
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : eng_(seed) {}
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double range(double half_width) { return (2.0 * unit() - 1.0) * half_width; }
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace

TriMatrix gen_triangular(const GenSpec& spec) {
  const std::size_t n = spec.n;
  assert(n >= 1);
  if (spec.k && *spec.k > n)
    throw std::invalid_argument("gen_triangular: k > n");
  // The gap fixes below push real parts apart by at most gap_floor each;
  // n of them must fit inside a spread comparable to the drawing range.
  if (static_cast<double>(n) * spec.gap_floor > 4.0 * spec.range)
    throw GapInfeasible("gen_triangular: n * gap_floor exceeds the diagonal spread");

  Uniform rng(spec.seed);
  TriMatrix t(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i)
      t(i, j) = cplx(rng.range(spec.range), rng.range(spec.range));

  // Keep the drawn magnitudes of the diagonal real parts; force signs
  // positive except at k random positions (or keep them as drawn).
  std::vector<int> neg(n, 0);
  if (spec.k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < *spec.k; ++i) {
      const std::size_t pick = i + rng.below(n - i);
      std::swap(idx[i], idx[pick]);
      neg[idx[i]] = 1;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) neg[i] = t(i, i).real() < 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double re = std::abs(t(i, i).real());
    if (re == 0.0) re = spec.gap_floor;  // measure-zero draw
    t(i, i) = cplx(neg[i] ? -re : re, t(i, i).imag());
  }

  // Minimal deterministic nudges until all pairwise distances reach
  // gap_floor: push the real part away from zero, which preserves both the
  // sign (inertia stays exact) and the non-zero-real-part invariant.
  for (std::size_t i = 1; i < n; ++i) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (std::abs(t(i, i) - t(j, j)) < spec.gap_floor) {
          const double dir = neg[i] ? -1.0 : 1.0;
          t(i, i) += cplx(dir * spec.gap_floor, 0.0);
          moved = true;
        }
      }
    }
  }
  assert(t.all_finite());
  return t;
}

TriMatrix oracle_sign(const TriMatrix& t) {
  const std::size_t n = t.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (t(i, i) == t(j, j))
        throw RepeatedEigenvalue("oracle_sign: repeated eigenvalues");

  // Eigenvector matrix V: column j solves (T - t_jj I) v = 0 with v_j = 1.
  TriMatrix v(n);
  for (std::size_t j = 0; j < n; ++j) {
    v(j, j) = cplx(1.0, 0.0);
    for (std::size_t i = j; i-- > 0;) {
      cplx s(0.0, 0.0);
      for (std::size_t k = i + 1; k <= j; ++k) s += t(i, k) * v(k, j);
      v(i, j) = -s / (t(i, i) - t(j, j));
    }
  }

  // M = V * diag(sign(Re t_jj)), then solve S V = M column-ascending.
  TriMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (t(j, j).real() == 0.0)
      throw PureImaginaryEigenvalue("oracle_sign: zero real part");
    const cplx d(t(j, j).real() > 0.0 ? 1.0 : -1.0, 0.0);
    for (std::size_t i = 0; i <= j; ++i) m(i, j) = v(i, j) * d;
  }
  TriMatrix s(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      cplx acc = m(i, j);
      for (std::size_t k = i; k < j; ++k) acc -= s(i, k) * v(k, j);
      s(i, j) = acc;  // v_jj = 1
    }
  }
  return s;
}

std::pair<double, double> residuals(const TriMatrix& t, const TriMatrix& u) {
  const std::size_t n = t.n();
  assert(u.n() == n);
  double inv2 = 0.0, comm2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      cplx uu(0.0, 0.0), ut(0.0, 0.0), tu(0.0, 0.0);
      for (std::size_t k = i; k <= j; ++k) {
        uu += u(i, k) * u(k, j);
        ut += u(i, k) * t(k, j);
        tu += t(i, k) * u(k, j);
      }
      if (i == j) uu -= cplx(1.0, 0.0);
      inv2 += std::norm(uu);
      comm2 += std::norm(ut - tu);
    }
  }
  const double un = u.frobenius_norm(), tn = t.frobenius_norm();
  return {std::sqrt(inv2) / std::max(1.0, un * un),
          std::sqrt(comm2) / std::max(1.0, un * tn)};
}

LruCacheSim::LruCacheSim(CacheConfig cfg) : cfg_(cfg) {
  assert(cfg_.m_words >= cfg_.b_words && cfg_.b_words >= 1);
  capacity_lines_ = std::max<std::uint64_t>(1, cfg_.m_words / cfg_.b_words);
}

void LruCacheSim::access(int mat_id, std::size_t index, bool is_write) {
  const std::uint64_t addr =
      (static_cast<std::uint64_t>(mat_id) << 40) | static_cast<std::uint64_t>(index);
  const std::uint64_t tag = addr / cfg_.b_words;
  auto it = map_.find(tag);
  if (it != map_.end()) {
    lru_.splice(lru_.begin(), lru_, it->second);
    it->second->dirty |= is_write;
    return;
  }
  words_ += cfg_.b_words;  // fetch
  if (lru_.size() == capacity_lines_) {
    const Line& victim = lru_.back();
    if (victim.dirty) words_ += cfg_.b_words;  // writeback
    map_.erase(victim.tag);
    lru_.pop_back();
  }
  lru_.push_front(Line{tag, is_write});
  map_.emplace(tag, lru_.begin());
}

std::uint64_t LruCacheSim::finish() {
  for (const Line& l : lru_)
    if (l.dirty) words_ += cfg_.b_words;
  lru_.clear();
  map_.clear();
  return words_;
}

const char* algorithm_tag(Algorithm a) {
  switch (a) {
    case Algorithm::Parlett: return "parlett";
    case Algorithm::Higham: return "higham";
    case Algorithm::Sylvester: return "sylvester";
    case Algorithm::RecursiveMM: return "recursive-mm";
    case Algorithm::RecursiveAE: return "recursive-ae";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm_tag(const std::string& tag) {
  for (Algorithm a : {Algorithm::Parlett, Algorithm::Higham,
                      Algorithm::Sylvester, Algorithm::RecursiveMM,
                      Algorithm::RecursiveAE})
    if (tag == algorithm_tag(a)) return a;
  return std::nullopt;
}

CostModel calibrate_cost_model() {
  using clock = std::chrono::steady_clock;
  CostModel m;

  // Multiply-kernel speed: one square block product.
  {
    const std::size_t d = 192;
    TriMatrix a(d), b(d), c(d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) {
        a(i, j) = cplx(0.5 + 0.001 * i, 0.25);
        b(i, j) = cplx(0.75, 0.002 * j);
      }
    CostStats st;
    const auto t0 = clock::now();
    block_mul_acc(view(c, 0, d, 0, d, kTraceU), view(a, 0, d, 0, d, kTraceT),
                  view(b, 0, d, 0, d, kTraceT), cplx(1.0, 0.0), st);
    const double s = std::chrono::duration<double>(clock::now() - t0).count();
    m.mm_unit_s = s / static_cast<double>(st.flops);
  }

  // Elementwise speed: one Parlett-Higham run.
  {
    GenSpec spec;
    spec.n = 192;
    spec.seed = 12345;
    spec.gap_floor = 0.05;
    const TriMatrix t = gen_triangular(spec);
    const auto t0 = clock::now();
    const SignResult r = parlett_higham_sign(t);
    const double s = std::chrono::duration<double>(clock::now() - t0).count();
    m.elem_unit_s = s / static_cast<double>(r.stats.flops);
  }
  return m;
}

void save_cost_model(const CostModel& m, const std::string& path) {
  nlohmann::json j;
  j["elem_unit_s"] = m.elem_unit_s;
  j["mm_unit_s"] = m.mm_unit_s;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write cost model: " + path);
  os << j.dump(2) << "\n";
}

std::optional<CostModel> load_cost_model(const std::string& path) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  nlohmann::json j;
  is >> j;
  CostModel m;
  m.elem_unit_s = j.at("elem_unit_s").get<double>();
  m.mm_unit_s = j.at("mm_unit_s").get<double>();
  return m;
}

std::uint64_t sign_inversions(const TriMatrix& t) {
  std::uint64_t positives_so_far = 0, inv = 0;
  for (std::size_t i = 0; i < t.n(); ++i) {
    if (t(i, i).real() > 0.0)
      ++positives_so_far;
    else
      inv += positives_so_far;
  }
  return inv;
}

Algorithm choose_algorithm(const TriMatrix& t, const CostModel& model) {
  const Inertia in = inertia_of(t);  // throws on zero real parts
  const double n = static_cast<double>(t.n());
  const double k_hat = static_cast<double>(sign_inversions(t));
  const double nm = static_cast<double>(in.n_minus);
  const double np = static_cast<double>(in.n_plus);

  // Reorder + back-transport are elementwise rotations, roughly 56n units
  // per swap each way; the Sylvester solve is multiply-backed, about
  // 8 * n_minus * n_plus * n units. The recursive algorithm does 4n^3 units
  // of block multiplies plus o(n^3) leaf work.
  const double sylvester_s = model.elem_unit_s * (2.0 * 56.0 * n * k_hat) +
                             model.mm_unit_s * (8.0 * nm * np * n);
  const double mm_s = model.mm_unit_s * 4.0 * n * n * n;
  return sylvester_s <= mm_s ? Algorithm::Sylvester : Algorithm::RecursiveMM;
}

}  // namespace trisign
