#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftk/operator_props.hpp"
#include "ftk/subspace.hpp"

namespace ftk {

// Operator written against an ordered list of pairwise orthogonal parts.
// blocks[i][j] maps parts[j] into parts[i] in the parts' own bases.
struct BlockDecomposition {
  Index ambient = 0;
  std::vector<Subspace> parts;
  std::vector<std::string> labels;
  std::vector<std::vector<ComplexMatrix>> blocks;

  ComplexMatrix concatenated_basis() const;
  ComplexMatrix assemble() const; // block matrix in the concatenated basis
  // ||B assemble() B* - T||_F; small iff the parts are an orthogonal
  // decomposition of the whole space.
  double reassembly_residual(const ComplexMatrix& t) const;
  const ComplexMatrix& block(Index i, Index j) const { return blocks[i][j]; }
};

BlockDecomposition make_blocks(const ComplexMatrix& t,
                               std::vector<Subspace> parts,
                               std::vector<std::string> labels);

// Embed a subspace expressed in part coordinates back into ambient space.
Subspace lift(const Subspace& part, const Subspace& inner);

struct AsymptoticLimit {
  ComplexMatrix s; // limit of T*^k T^k, Hermitian, 0 <= S <= I
  int iterations = 0;
  double final_step = 0.0;
  Subspace max_isometric; // N(I - S): largest invariant subspace where every
                          // power of T acts isometrically
};

AsymptoticLimit asymptotic_limit(const ComplexMatrix& t,
                                 const Tolerances& tol = {});

// Largest T-invariant subspace M on which a contraction T restricts to a
// partial isometry: M = N(T) + H1 with H1 the largest part of N(I - T*T)
// whose forward orbit never reaches closure R(T*T - (T*T)^2).
struct MaxPartialIsometricResult {
  Subspace kernel_part;   // N(T)
  Subspace unit_kernel;   // N(I - T*T)
  Subspace lifted_kernel; // H1, inside unit_kernel
  Subspace m;             // N(T) + H1
  BlockDecomposition two_block;   // [M, M-perp]: W, R / 0, Q
  BlockDecomposition three_block; // [N(T), H1, M-perp]
  Subspace q_unit_kernel;         // N(I - Q*Q) lifted to ambient space

  bool w_partial_isometry = false;
  double w_residual = 0.0; // ||(W*W)^2 - W*W||_F
  double w_star_r_residual = 0.0;
  double invariance_residual = 0.0; // lower-left block of the two_block form
  bool q_kernel_contained = false;
  double q_kernel_defect = 0.0; // N(I - Q*Q) inside N(I - T*T)
  bool q_pure = false;
  bool n_sum_invariant = false;
  double n_sum_defect = 0.0; // invariance of N(T) + N(I - T*T)
  // N(I - T*T) ∩ M-perp inside N(R); equivalent to the two-sided splitting
  // N(T) + N(I - T*T) = M + N(I - Q*Q).
  bool split_criterion = false;
  double split_criterion_defect = 0.0;
};

MaxPartialIsometricResult max_partial_isometric_subspace(
    const ComplexMatrix& t, const Tolerances& tol = {});

// Contraction written against N(T) + N(I - T*T) + closure R(T*T - (T*T)^2).
// Throws SpanMismatch if the three parts fail to exhaust the space.
BlockDecomposition three_block_form(const ComplexMatrix& t,
                                    const Tolerances& tol = {});

struct DiagonalSplit {
  Subspace g; // N(I - T*T), reducing
  ComplexMatrix u, z;
  double off_diagonal_residual = 0.0;
  double u_self_adjoint_residual = 0.0;
  double u_involution_residual = 0.0; // U^2 - I
  bool z_pure_contraction = false;
  bool z_condition_holds = false;
};

// Kernel structure of a contraction under the modulus order |T| <= |Re T|:
// the unit fixed spaces of T*T, TT*, |Re T| coincide and reduce T to a
// symmetry; the kernel relations and the triangular form follow.
struct KernelStructureReport {
  ConditionReport condition;
  Subspace unit_tt;      // N(I - T*T)
  Subspace unit_ttstar;  // N(I - TT*)
  Subspace unit_abs_re;  // N(I - |Re T|)
  double kernel_distance = 0.0; // max pairwise projector distance
  bool kernels_equal = false;

  bool structure_computed = false; // the rest is filled only under the order
  bool borderline = false; // order held at tol but not at the tightened tol
  ComplexMatrix symmetry_part;
  double reduction_residual = 0.0; // both off-diagonal blocks against unit_tt
  double symmetry_sa_residual = 0.0;
  double symmetry_sq_residual = 0.0;
  double re_kernel_distance = 0.0; // N(Re T) vs N(T) ∩ N(T*)
  bool re_kernel_identity = false;
  double adjoint_kernel_distance = 0.0; // N(T*) vs N(Re T) + N(T*|range T*)
  bool adjoint_kernel_split = false;
  double kernel_match_distance = 0.0; // N(T) vs N(Re T)
  bool kernels_match = false;
  std::optional<DiagonalSplit> diag_split; // present when kernels_match
  BlockDecomposition triangular; // [N(I-T*T), N(T), rest]
  double zero_pattern_residual = 0.0;
};

KernelStructureReport unit_kernel_structure(const ComplexMatrix& t,
                                            const Tolerances& tol = {});

// Triangular form of a nonzero T against G = N(I - S) for the asymptotic
// limit S of T/||T||: the top-left block is ||T|| times an isometry.
struct CanonicalTriangularForm {
  double norm = 0.0;
  Subspace g;
  BlockDecomposition dec; // [G, G-perp]
  double isometry_residual = 0.0;   // (S/||T||)*(S/||T||) - I
  double triangular_residual = 0.0; // lower-left block
  bool r_injective = false;
  bool q_square_zero = false;
  double q_square_residual = 0.0;
  bool expansive = false; // I <= T*T
  bool q_contraction = false;
  // Contraction sub-case, filled when ||T|| <= 1 and the modulus order holds.
  std::optional<double> s_star_r_residual;
  std::optional<bool> r_partial_isometry;
};

CanonicalTriangularForm canonical_triangular_form(const ComplexMatrix& t,
                                                  const Tolerances& tol = {});

// Contractive m-quasi-isometry split against G = closure R(T^m): T|_G is
// unitary, the complement block is nilpotent of index at most m.
struct ReducedQuasiIsometry {
  double unit_kernel_distance = 0.0;    // N(I - T*T) vs G
  double adjoint_unit_distance = 0.0;   // N(I - TT*) vs G
  double s_self_adjoint_residual = 0.0; // the unitary part is a symmetry
  double s_involution_residual = 0.0;
  double r_norm = 0.0; // the coupling block vanishes
};

struct QuasiIsometryStructure {
  int m = 0;
  Subspace g;
  BlockDecomposition dec; // [G, G-perp]
  double isometry_residual = 0.0;   // S*S - I on G
  double triangular_residual = 0.0; // lower-left block
  double q_power_residual = 0.0;    // ||Q^m||_F
  double adjoint_kernel_distance = 0.0; // G-perp vs N(T*^m)
  bool condition_holds = false;
  std::optional<ReducedQuasiIsometry> reduced;       // condition and m >= 3
  std::optional<double> self_adjoint_residual;       // condition and m <= 2
};

QuasiIsometryStructure quasi_isometry_structure(const ComplexMatrix& t, int m,
                                                const Tolerances& tol = {});

// Invariant-subspace split whose two diagonal blocks are partial isometries
// (possibly after scaling both by ||T||); self-adjointness follows under the
// modulus order.
struct TriangularPartialIsometryCheck {
  BlockDecomposition dec; // [G, G-perp]
  bool w_partial_isometry = false;
  bool w_prime_partial_isometry = false;
  bool form_holds = false;     // both blocks pass unscaled
  bool scaled_form_holds = false; // both pass after dividing by ||T||
  std::optional<double> self_adjoint_residual; // under the modulus order
};

TriangularPartialIsometryCheck triangular_partial_isometry_form(
    const ComplexMatrix& t, const Subspace& g, const Tolerances& tol = {});

// Five-part refinement of a contraction satisfying the modulus order:
// H = H1 + N(Re T) + N(Q*) + H0' + closure R(Q), with H0' = N(T) minus
// N(Re T). Both T and T* have a pinned zero pattern here.
struct RefinedDecomposition {
  BlockDecomposition dec;
  ComplexMatrix r00, r01, q0, q1;
  ComplexMatrix r_star_block, q_star_block; // T* blocks against N(T*), H3
  double zero_pattern_residual = 0.0;
  double adjoint_zero_pattern_residual = 0.0;
  bool adjoint_kernel_split = false; // N(T*) = N(Re T) + N(Q*)
  double adjoint_kernel_distance = 0.0;
};

RefinedDecomposition refined_decomposition(const ComplexMatrix& t,
                                           const Tolerances& tol = {});

// Smallest T-invariant subspace containing v (orthonormalized power basis).
Subspace krylov_invariant_subspace(const ComplexMatrix& t,
                                   const ComplexVector& v,
                                   const Tolerances& tol = {});

} // namespace ftk
