#pragma once

#include <string>

#include "ftk/linalg.hpp"

namespace ftk {

// Two wire formats, sniffed by the first non-space byte:
//   JSON  {"rows":r,"cols":c,"data":[[re,im],...]}   (row-major)
//   CSV   one row per line, entries like  1.5, 2-3i, i, -0.25i
// "-" reads standard input. Malformed or non-finite input throws ParseError.
ComplexMatrix read_matrix(const std::string& path);
ComplexMatrix parse_matrix(const std::string& text);

std::string matrix_to_json(const ComplexMatrix& m);
std::string matrix_to_csv(const ComplexMatrix& m);

// JSON form; "-" writes to standard output.
void write_matrix(const std::string& path, const ComplexMatrix& m);

// FNV-1a 64 over the canonical JSON form, as 16 hex digits.
std::string matrix_digest(const ComplexMatrix& m);

} // namespace ftk
