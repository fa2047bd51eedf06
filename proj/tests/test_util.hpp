#pragma once

#include <initializer_list>

#include "ftk/linalg.hpp"
#include "ftk/subspace.hpp"

namespace ftk::testutil {

inline ComplexMatrix mat(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const Index m = static_cast<Index>(rows.size());
  const Index n = m ? static_cast<Index>(rows.begin()->size()) : 0;
  ComplexMatrix a(m, n);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& v : row) a(i, j++) = v;
    ++i;
  }
  return a;
}

inline ComplexMatrix diag(std::initializer_list<double> d) {
  ComplexMatrix a = ComplexMatrix::Zero(static_cast<Index>(d.size()),
                                        static_cast<Index>(d.size()));
  Index i = 0;
  for (double v : d) a(i, i) = v, ++i;
  return a;
}

// Coordinate subspace span{e_k : k in coords} of C^n (0-based).
inline Subspace coord_span(std::initializer_list<int> coords, Index n) {
  ComplexMatrix b = ComplexMatrix::Zero(n, static_cast<Index>(coords.size()));
  Index j = 0;
  for (int k : coords) b(k, j++) = 1.0;
  return {n, b};
}

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).norm();
}

} // namespace ftk::testutil
