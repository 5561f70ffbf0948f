#include "trisign/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace trisign {

void write_matrix(std::ostream& os, const TriMatrix& t) {
  const std::size_t n = t.n();
  os << "trisign v1 " << n << "\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      os << i << " " << j << " " << t(i, j).real() << " " << t(i, j).imag()
         << "\n";
}

void write_matrix_file(const std::string& path, const TriMatrix& t) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_matrix(os, t);
  if (!os) throw std::runtime_error("write failed: " + path);
}

TriMatrix read_matrix(std::istream& is) {
  std::string word, version;
  std::size_t n = 0;
  if (!(is >> word >> version >> n) || word != "trisign" || version != "v1" ||
      n < 1)
    throw std::runtime_error("bad matrix header (expected 'trisign v1 <n>')");

  TriMatrix t(n);
  std::size_t i, j;
  double re, im;
  while (is >> i >> j >> re >> im) {
    if (i >= n || j >= n || i > j)
      throw std::runtime_error("entry (" + std::to_string(i) + "," +
                               std::to_string(j) +
                               ") outside the upper triangle");
    if (!std::isfinite(re) || !std::isfinite(im))
      throw std::runtime_error("non-finite entry at (" + std::to_string(i) +
                               "," + std::to_string(j) + ")");
    t(i, j) = cplx(re, im);
  }
  if (!is.eof() && is.fail() && !is.bad()) {
    // Trailing garbage that did not parse as four fields.
    is.clear();
    std::string rest;
    if (is >> rest) throw std::runtime_error("malformed entry line");
  }
  return t;
}

TriMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_matrix(is);
}

}  // namespace trisign
