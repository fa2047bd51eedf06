#pragma once

#include "ftk/linalg.hpp"

namespace ftk {

// Subspace of C^n held as an orthonormal column basis (n x r, r may be 0).
// Bases are not canonical; comparisons always go through projectors.
struct Subspace {
  Index ambient = 0;
  ComplexMatrix basis;

  Index rank() const { return basis.cols(); }

  static Subspace zero(Index ambient);
  static Subspace full(Index ambient);
  // Validates basis* basis = I within tol.eq.
  static Subspace from_basis(const ComplexMatrix& basis,
                             const Tolerances& tol = {});
};

ComplexMatrix projector(const Subspace& s);

// Kernel / closed range via SVD with the anchored rank cutoff (see
// rank_cutoff). Zero sigma_max and zero scale make every direction kernel.
Subspace kernel(const ComplexMatrix& a, const Tolerances& tol = {},
                double scale = 0.0);
Subspace range_closure(const ComplexMatrix& a, const Tolerances& tol = {},
                       double scale = 0.0);

// to.basis* * T * from.basis; T must map from.ambient into to.ambient.
ComplexMatrix compress(const ComplexMatrix& t, const Subspace& from,
                       const Subspace& to);

Subspace complement(const Subspace& s, const Tolerances& tol = {});
Subspace subspace_sum(const Subspace& a, const Subspace& b,
                      const Tolerances& tol = {});
Subspace intersect(const Subspace& a, const Subspace& b,
                   const Tolerances& tol = {});

// ||(I - P_outer) P_inner||_F; containment <=> defect <= tol.eq.
double containment_defect(const Subspace& outer, const Subspace& inner);
bool contains(const Subspace& outer, const Subspace& inner,
              const Tolerances& tol = {});

double projector_distance(const Subspace& a, const Subspace& b); // Frobenius
bool subspace_equal(const Subspace& a, const Subspace& b,
                    const Tolerances& tol = {});

// ||(I - P_s) T P_s||_F; invariance of s under T <=> small vs tol.eq * ||T||.
double invariance_defect(const ComplexMatrix& t, const Subspace& s);

// Orthogonal complement of sub inside parent (assumes sub contained in
// parent; directions of sub are projected out of parent's basis).
Subspace complement_within(const Subspace& parent, const Subspace& sub,
                           const Tolerances& tol = {});

} // namespace ftk
