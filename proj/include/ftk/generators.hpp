#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "ftk/linalg.hpp"
#include "ftk/tolerances.hpp"

namespace ftk {

enum class OperatorKind {
  unitary,
  symmetry,
  contraction,
  pure_contraction,
  partial_isometry,
  nilpotent,
  m_quasi_isometry,
  self_adjoint_contraction,
  hermitian_plus_perturbation,
};

const char* kind_name(OperatorKind kind);
OperatorKind parse_kind(const std::string& name); // throws ParseError

struct ClassSpec {
  OperatorKind kind = OperatorKind::contraction;
  Index dim = 2;
  std::uint64_t seed = 0;
  Index rank = -1;          // partial_isometry; -1 picks dim/2
  int order = 2;            // nilpotent index
  int m = 1;                // quasi-isometry order
  bool contractive = true;  // m_quasi_isometry family
  double epsilon = 1e-3;    // hermitian_plus_perturbation
};

// Seeded, deterministic construction; every output is re-checked through
// classify before it is returned (resampled on failure, capped).
ComplexMatrix generate(const ClassSpec& spec, const Tolerances& tol = {});

// T + epsilon * G with G a seeded Gaussian of unit Frobenius norm.
ComplexMatrix perturb(const ComplexMatrix& t, double epsilon,
                      std::uint64_t seed);

// Integer-exact pair on dimension 2*half_dim: the nilpotent block shift
// T = [[0, I], [0, 0]] and the symmetry U = [[0, I], [I, 0]], for which
// T*U = I (+) 0 and U*T = 0 (+) I hold exactly.
std::pair<ComplexMatrix, ComplexMatrix> block_shift_pair(Index half_dim);

// Orthonormalization of a seeded Gaussian square matrix.
ComplexMatrix random_unitary(std::uint64_t seed, Index n);

} // namespace ftk
