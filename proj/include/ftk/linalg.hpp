#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ftk/tolerances.hpp"

namespace ftk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct HermitianEigen {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // unitary, column i pairs with eigenvalues[i]
};

struct Svd {
  ComplexMatrix u;            // full, rows x rows
  RealVector singular_values; // descending, min(rows, cols) entries
  ComplexMatrix v;            // full, cols x cols
};

struct LoewnerResult {
  bool holds = false;
  double defect = 0.0; // min eigenvalue of B - A; negative means A <= B fails
};

double frob(const ComplexMatrix& a);
double op_norm(const ComplexMatrix& a); // largest singular value, 0 for empty

ComplexMatrix hermitize(const ComplexMatrix& a); // (A + A*)/2
bool is_hermitian(const ComplexMatrix& a, double rel_tol);

// Throws NotHermitian / NoConvergence. Works on the hermitized input so the
// solver sees an exactly self-adjoint matrix.
HermitianEigen hermitian_eig(const ComplexMatrix& a, const Tolerances& tol = {});

Svd svd(const ComplexMatrix& a);

// Rank cutoff: sigma <= tol.rank * max(sigma_max, scale) * max(rows, cols).
// `scale` anchors the cutoff when the argument is a residual of a larger
// expression (I - T*T for unitary T is ~1e-16 noise; relative to its own
// sigma_max that noise would read as structure).
double rank_cutoff(double sigma_max, Index rows, Index cols,
                   const Tolerances& tol, double scale = 0.0);

// A must be Hermitian with min eigenvalue >= -tol.psd * ||A||; eigenvalues in
// [-slack, 0) are clamped to 0. Throws NotPSD otherwise.
ComplexMatrix psd_sqrt(const ComplexMatrix& a, const Tolerances& tol = {});

ComplexMatrix pinv(const ComplexMatrix& a, const Tolerances& tol = {});

// Loewner order test A <= B for Hermitian A, B.
// holds <=> defect >= -tol.psd * max(||A||, ||B||, 1).
LoewnerResult loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b,
                          const Tolerances& tol = {});

} // namespace ftk
