#ifndef TRISIGN_HARNESS_HPP
#define TRISIGN_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <list>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "trisign/core.hpp"
#include "trisign/cost_stats.hpp"
#include "trisign/tri_matrix.hpp"

namespace trisign {

/// Recipe for a random upper-triangular test matrix. `k` prescribes the
/// number of negative-real-part diagonal entries; leave it empty for the
/// natural (unforced) signs of the draw.
struct GenSpec {
  std::size_t n = 0;
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
  double range = 50.0;           // half-width of the uniform distribution
  double gap_floor = 50.0e-3;    // minimum pairwise diagonal separation
};

/// Deterministic per seed (mt19937_64 with an explicit 53-bit uniform
/// mapping, so streams are identical across platforms). Off-diagonal parts
/// are uniform in [-range, range]; diagonal real parts keep their drawn
/// magnitude with signs forced positive except at k random positions, then
/// are nudged minimally (away from zero, preserving sign) until all pairwise
/// distances reach gap_floor. Throws GapInfeasible when n * gap_floor
/// exceeds the representable diagonal spread.
TriMatrix gen_triangular(const GenSpec& spec);

/// Independent oracle: eigenvectors of triangular T by back-substitution
/// (column j solves (T - t_jj I) v = 0 with v_j = 1), then
/// V diag(sign(Re t_jj)) V^{-1} by two triangular solves. Shares no code
/// path with the five sign algorithms. Requires distinct diagonal entries.
TriMatrix oracle_sign(const TriMatrix& t);

/// (inv_res, comm_res) = (||U^2 - I||_F / max(1, ||U||_F^2),
///                        ||UT - TU||_F / max(1, ||U||_F ||T||_F)).
std::pair<double, double> residuals(const TriMatrix& t, const TriMatrix& u);

/// Ideal cache model of the word-transfer analysis: fully associative LRU.
/// One word = one complex matrix element; tracing is logical (matrix id and
/// element index), not physical, so the count is layout-independent.
struct CacheConfig {
  std::uint64_t m_words = 0;  // cache capacity in words
  std::uint64_t b_words = 1;  // line size in words
};

/// Streams an access trace through the cache; attach it as the MemTracer of
/// an instrumented run, then call finish(). Words transferred = (misses +
/// dirty evictions + final dirty flush) * B.
class LruCacheSim : public MemTracer {
 public:
  explicit LruCacheSim(CacheConfig cfg);
  void access(int mat_id, std::size_t index, bool is_write) override;
  std::uint64_t finish();  // flushes dirty lines, returns total words
  std::uint64_t words() const { return words_; }

 private:
  struct Line {
    std::uint64_t tag;
    bool dirty;
  };
  CacheConfig cfg_;
  std::uint64_t capacity_lines_;
  std::uint64_t words_ = 0;
  std::list<Line> lru_;  // front = most recent
  std::unordered_map<std::uint64_t, std::list<Line>::iterator> map_;
};

enum class Algorithm { Parlett, Higham, Sylvester, RecursiveMM, RecursiveAE };

const char* algorithm_tag(Algorithm a);
std::optional<Algorithm> parse_algorithm_tag(const std::string& tag);

/// Measured seconds per flop unit for the two execution styles, calibrated
/// once per build by a micro-benchmark and persisted as JSON.
struct CostModel {
  double elem_unit_s = 0.0;  // scalar/elementwise code
  double mm_unit_s = 0.0;    // block-multiply code
};

CostModel calibrate_cost_model();
void save_cost_model(const CostModel& m, const std::string& path);
std::optional<CostModel> load_cost_model(const std::string& path);

/// Number of (positive before negative) inversions of the diagonal sign
/// sequence: the exact swap count a stable reordering pass would need.
std::uint64_t sign_inversions(const TriMatrix& t);

/// Picks Sylvester when c1*n*k_hat + c2*n_minus*n_plus*n units at elementwise
/// speed undercut the recursive-MM estimate of 4n^3 units at multiply speed.
Algorithm choose_algorithm(const TriMatrix& t, const CostModel& model);

}  // namespace trisign

#endif
