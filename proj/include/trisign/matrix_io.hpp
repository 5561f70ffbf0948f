#ifndef TRISIGN_MATRIX_IO_HPP
#define TRISIGN_MATRIX_IO_HPP

#include <iosfwd>
#include <string>

#include "trisign/tri_matrix.hpp"

namespace trisign {

/// Text format: header line "trisign v1 <n>", then one line "<i> <j> <re>
/// <im>" per upper-triangle entry in row-major order, 17 significant digits,
/// 0-based indices. Entries absent from a file are zero.
void write_matrix(std::ostream& os, const TriMatrix& t);
void write_matrix_file(const std::string& path, const TriMatrix& t);

/// Rejects malformed headers, out-of-triangle indices, and non-finite
/// values with std::runtime_error.
TriMatrix read_matrix(std::istream& is);
TriMatrix read_matrix_file(const std::string& path);

}  // namespace trisign

#endif
