#ifndef TRISIGN_TRI_MATRIX_HPP
#define TRISIGN_TRI_MATRIX_HPP

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace trisign {

using cplx = std::complex<double>;

/// Failures of the mathematics (as opposed to bad user input). The CLI maps
/// these to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PureImaginaryEigenvalue : NumericalError {
  using NumericalError::NumericalError;
};
struct RepeatedEigenvalue : NumericalError {
  using NumericalError::NumericalError;
};
struct EqualEigenvalues : NumericalError {
  using NumericalError::NumericalError;
};
struct SingularSylvester : NumericalError {
  using NumericalError::NumericalError;
};
struct GapInfeasible : NumericalError {
  using NumericalError::NumericalError;
};

/// Identifiers for the logical matrices seen by the cache simulator.
enum TraceMat : int { kTraceT = 0, kTraceU = 1, kTraceX = 2, kTraceY = 3 };

/// Dense column-major storage for an upper-triangular complex matrix.
/// The strict lower triangle is kept at zero; a couple of operations
/// (Givens back-transport) fill it transiently and re-zero it before
/// returning. Indices are 0-based throughout.
class TriMatrix {
 public:
  explicit TriMatrix(std::size_t n) : n_(n), a_(n * n, cplx(0.0, 0.0)) {
    assert(n >= 1);
  }

  std::size_t n() const { return n_; }

  cplx& operator()(std::size_t i, std::size_t j) {
    assert(i < n_ && j < n_);
    return a_[j * n_ + i];
  }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    assert(i < n_ && j < n_);
    return a_[j * n_ + i];
  }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  std::size_t index_of(std::size_t i, std::size_t j) const { return j * n_ + i; }

  bool strictly_lower_is_zero() const {
    for (std::size_t j = 0; j + 1 < n_; ++j)
      for (std::size_t i = j + 1; i < n_; ++i)
        if ((*this)(i, j) != cplx(0.0, 0.0)) return false;
    return true;
  }

  bool all_finite() const {
    for (const cplx& z : a_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  /// Max |entry| in the strict lower triangle, then set it to zero.
  double zero_strict_lower() {
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < n_; ++j)
      for (std::size_t i = j + 1; i < n_; ++i) {
        worst = std::max(worst, std::abs((*this)(i, j)));
        (*this)(i, j) = cplx(0.0, 0.0);
      }
    return worst;
  }

 private:
  std::size_t n_;
  std::vector<cplx> a_;
};

/// A rectangular window into column-major storage. Views into disjoint
/// blocks may be read concurrently; one writer per block.
struct BlockView {
  cplx* base = nullptr;      // element (0,0) of the block
  std::size_t ld = 0;        // leading dimension of the parent
  std::size_t rows = 0;
  std::size_t cols = 0;
  int mat_id = kTraceT;      // identity of the parent for tracing
  std::size_t row0 = 0;      // position within the parent, for tracing
  std::size_t col0 = 0;

  cplx& at(std::size_t r, std::size_t c) const {
    assert(r < rows && c < cols);
    return base[c * ld + r];
  }

  /// Parent-storage index of element (r,c); the trace address space.
  std::size_t parent_index(std::size_t r, std::size_t c) const {
    return (col0 + c) * ld + (row0 + r);
  }
};

/// View of the half-open index window [r0,r1) x [c0,c1) of m.
inline BlockView view(TriMatrix& m, std::size_t r0, std::size_t r1,
                      std::size_t c0, std::size_t c1, int mat_id) {
  assert(r0 <= r1 && r1 <= m.n() && c0 <= c1 && c1 <= m.n());
  return BlockView{m.data() + c0 * m.n() + r0, m.n(), r1 - r0, c1 - c0,
                   mat_id, r0, c0};
}

inline BlockView view(const TriMatrix& m, std::size_t r0, std::size_t r1,
                      std::size_t c0, std::size_t c1, int mat_id) {
  return view(const_cast<TriMatrix&>(m), r0, r1, c0, c1, mat_id);
}

inline double frobenius_distance(const TriMatrix& a, const TriMatrix& b) {
  assert(a.n() == b.n());
  double s = 0.0;
  for (std::size_t j = 0; j < a.n(); ++j)
    for (std::size_t i = 0; i <= j; ++i) s += std::norm(a(i, j) - b(i, j));
  return std::sqrt(s);
}

/// ||a-b||_F / max(1, ||b||_F)
inline double relative_distance(const TriMatrix& a, const TriMatrix& b) {
  return frobenius_distance(a, b) / std::max(1.0, b.frobenius_norm());
}

}  // namespace trisign

#endif
