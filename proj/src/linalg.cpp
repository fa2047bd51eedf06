#include "ftk/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ftk/errors.hpp"

namespace ftk {

double frob(const ComplexMatrix& a) { return a.norm(); }

double op_norm(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return a.jacobiSvd().singularValues()(0);
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
  return 0.5 * (a + a.adjoint());
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= rel_tol * std::max(1.0, a.norm());
}

HermitianEigen hermitian_eig(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols())
    throw NotHermitian("hermitian_eig: matrix is not square");
  if (!is_hermitian(a, tol.eq))
    throw NotHermitian("hermitian_eig: matrix is not Hermitian within tol.eq");
  if (a.rows() == 0) return {RealVector(0), ComplexMatrix(0, 0)};

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(a));
  if (solver.info() != Eigen::Success)
    throw NoConvergence("hermitian_eig: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Svd svd(const ComplexMatrix& a) {
  const Index m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) {
    return {ComplexMatrix::Identity(m, m), RealVector(0),
            ComplexMatrix::Identity(n, n)};
  }
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU |
                                                Eigen::ComputeFullV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double rank_cutoff(double sigma_max, Index rows, Index cols,
                   const Tolerances& tol, double scale) {
  const double dim = static_cast<double>(std::max(rows, cols));
  return tol.rank * std::max(sigma_max, scale) * dim;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, const Tolerances& tol) {
  HermitianEigen eig = hermitian_eig(a, tol);
  const Index n = a.rows();
  if (n == 0) return ComplexMatrix(0, 0);

  const double scale =
      std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(n - 1)));
  if (eig.eigenvalues(0) < -tol.psd * scale)
    throw NotPSD("psd_sqrt: min eigenvalue " +
                 std::to_string(eig.eigenvalues(0)) + " below -tol.psd*||A||");

  RealVector roots(n);
  for (Index i = 0; i < n; ++i)
    roots(i) = std::sqrt(std::max(eig.eigenvalues(i), 0.0));
  ComplexMatrix r = eig.eigenvectors * roots.asDiagonal() *
                    eig.eigenvectors.adjoint();
  return hermitize(r);
}

ComplexMatrix pinv(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() == 0 || a.cols() == 0)
    return ComplexMatrix::Zero(a.cols(), a.rows());
  Svd dec = svd(a);
  const double cutoff =
      rank_cutoff(dec.singular_values(0), a.rows(), a.cols(), tol);
  RealVector inv = RealVector::Zero(dec.singular_values.size());
  for (Index i = 0; i < inv.size(); ++i)
    if (dec.singular_values(i) > cutoff) inv(i) = 1.0 / dec.singular_values(i);
  return dec.v.leftCols(inv.size()) * inv.asDiagonal() *
         dec.u.leftCols(inv.size()).adjoint();
}

LoewnerResult loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b,
                          const Tolerances& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("loewner_leq: operands differ in shape");
  if (!is_hermitian(a, tol.eq) || !is_hermitian(b, tol.eq))
    throw NotHermitian("loewner_leq: operands must be Hermitian");
  if (a.rows() == 0) return {true, 0.0};

  HermitianEigen diff = hermitian_eig(hermitize(b - a), tol);
  HermitianEigen ea = hermitian_eig(a, tol);
  HermitianEigen eb = hermitian_eig(b, tol);
  auto abs_max = [](const RealVector& v) {
    return std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
  };
  const double scale =
      std::max({abs_max(ea.eigenvalues), abs_max(eb.eigenvalues), 1.0});
  const double defect = diff.eigenvalues(0);
  return {defect >= -tol.psd * scale, defect};
}

} // namespace ftk
