#ifndef TRISIGN_CORE_HPP
#define TRISIGN_CORE_HPP

#include <cstddef>

#include "trisign/tri_matrix.hpp"

namespace trisign {

/// Eigenvalue counts by sign of the real part. Zero real parts are rejected
/// before this type is built, so n_minus + n_plus = n always.
struct Inertia {
  std::size_t n_minus = 0;
  std::size_t n_plus = 0;
};

/// Counts diagonal entries by sign of real part. Throws
/// PureImaginaryEigenvalue when some Re(t_ii) is exactly zero: the sign
/// function is undefined there. Separately warns (stderr, once per call)
/// when |Re(t_ii)| < 1e-12 * max_i |t_ii|, which makes the problem
/// ill-conditioned without being undefined.
Inertia inertia_of(const TriMatrix& t);

/// Scalar sign by real part; callers guarantee re != 0.
inline cplx scalar_sign(cplx z) { return cplx(z.real() > 0.0 ? 1.0 : -1.0, 0.0); }

}  // namespace trisign

#endif
