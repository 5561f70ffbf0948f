#include "trisign/core.hpp"

#include <cmath>
#include <iostream>

namespace trisign {

Inertia inertia_of(const TriMatrix& t) {
  const std::size_t n = t.n();
  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    max_abs = std::max(max_abs, std::abs(t(i, i)));

  Inertia in;
  bool warned = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = t(i, i).real();
    if (re == 0.0)
      throw PureImaginaryEigenvalue(
          "inertia_of: diagonal entry " + std::to_string(i) +
          " has zero real part; sign(T) is undefined");
    if (!warned && std::abs(re) < 1e-12 * max_abs) {
      std::cerr << "trisign: warning: |Re(t_" << i << i
                << ")| < 1e-12 * max|t_ii|; nearly imaginary eigenvalue, "
                   "sign(T) is ill-conditioned\n";
      warned = true;
    }
    if (re < 0.0)
      ++in.n_minus;
    else
      ++in.n_plus;
  }
  return in;
}

}  // namespace trisign
