#include "ftk/subspace.hpp"

#include <algorithm>

#include "ftk/errors.hpp"

namespace ftk {

Subspace Subspace::zero(Index ambient) {
  return {ambient, ComplexMatrix(ambient, 0)};
}

Subspace Subspace::full(Index ambient) {
  return {ambient, ComplexMatrix::Identity(ambient, ambient)};
}

Subspace Subspace::from_basis(const ComplexMatrix& basis,
                              const Tolerances& tol) {
  const Index r = basis.cols();
  ComplexMatrix gram = basis.adjoint() * basis;
  if ((gram - ComplexMatrix::Identity(r, r)).norm() > tol.eq * std::max<double>(1, r))
    throw DimensionMismatch("Subspace::from_basis: columns not orthonormal");
  return {basis.rows(), basis};
}

ComplexMatrix projector(const Subspace& s) {
  return s.basis * s.basis.adjoint();
}

Subspace kernel(const ComplexMatrix& a, const Tolerances& tol, double scale) {
  const Index m = a.rows(), n = a.cols();
  if (n == 0) return Subspace::zero(0);
  if (m == 0) return Subspace::full(n);

  Svd dec = svd(a);
  const double cutoff = rank_cutoff(dec.singular_values(0), m, n, tol, scale);
  Index r = 0;
  while (r < dec.singular_values.size() && dec.singular_values(r) > cutoff)
    ++r;
  return {n, dec.v.rightCols(n - r)};
}

Subspace range_closure(const ComplexMatrix& a, const Tolerances& tol,
                       double scale) {
  const Index m = a.rows(), n = a.cols();
  if (m == 0) return Subspace::zero(0);
  if (n == 0) return Subspace::zero(m);

  Svd dec = svd(a);
  const double cutoff = rank_cutoff(dec.singular_values(0), m, n, tol, scale);
  Index r = 0;
  while (r < dec.singular_values.size() && dec.singular_values(r) > cutoff)
    ++r;
  return {m, dec.u.leftCols(r)};
}

ComplexMatrix compress(const ComplexMatrix& t, const Subspace& from,
                       const Subspace& to) {
  if (t.cols() != from.ambient || t.rows() != to.ambient)
    throw DimensionMismatch("compress: operator does not match subspaces");
  return to.basis.adjoint() * t * from.basis;
}

Subspace complement(const Subspace& s, const Tolerances& tol) {
  return kernel(projector(s), tol, 1.0);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b,
                      const Tolerances& tol) {
  if (a.ambient != b.ambient)
    throw DimensionMismatch("subspace_sum: ambient dimensions differ");
  ComplexMatrix joined(a.ambient, a.rank() + b.rank());
  joined << a.basis, b.basis;
  return range_closure(joined, tol, 1.0);
}

Subspace intersect(const Subspace& a, const Subspace& b,
                   const Tolerances& tol) {
  if (a.ambient != b.ambient)
    throw DimensionMismatch("intersect: ambient dimensions differ");
  ComplexMatrix gap = 2.0 * ComplexMatrix::Identity(a.ambient, a.ambient) -
                      projector(a) - projector(b);
  return kernel(gap, tol, 1.0);
}

double containment_defect(const Subspace& outer, const Subspace& inner) {
  // ||(I - P_outer) P_inner||_F collapses to ||(I - P_outer) B_inner||_F
  // because B_inner* has orthonormal rows.
  return (inner.basis - outer.basis * (outer.basis.adjoint() * inner.basis))
      .norm();
}

bool contains(const Subspace& outer, const Subspace& inner,
              const Tolerances& tol) {
  if (outer.ambient != inner.ambient)
    throw DimensionMismatch("contains: ambient dimensions differ");
  return containment_defect(outer, inner) <= tol.eq;
}

double projector_distance(const Subspace& a, const Subspace& b) {
  return (projector(a) - projector(b)).norm();
}

bool subspace_equal(const Subspace& a, const Subspace& b,
                    const Tolerances& tol) {
  if (a.ambient != b.ambient)
    throw DimensionMismatch("subspace_equal: ambient dimensions differ");
  return projector_distance(a, b) <= tol.eq;
}

double invariance_defect(const ComplexMatrix& t, const Subspace& s) {
  ComplexMatrix image = t * s.basis;
  return (image - s.basis * (s.basis.adjoint() * image)).norm();
}

Subspace complement_within(const Subspace& parent, const Subspace& sub,
                           const Tolerances& tol) {
  ComplexMatrix residual =
      parent.basis - sub.basis * (sub.basis.adjoint() * parent.basis);
  return range_closure(residual, tol, 1.0);
}

} // namespace ftk
