#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftk/linalg.hpp"
#include "ftk/subspace.hpp"

namespace ftk {

struct OperatorFunctions {
  ComplexMatrix modulus;       // (T*T)^{1/2}
  ComplexMatrix real_part;     // (T + T*)/2
  ComplexMatrix abs_real_part; // |Re T|
  double norm = 0.0;           // largest singular value
};

// The modulus inequality |T| <= |Re T| and its companions. Defects are min
// eigenvalues of the corresponding differences; negative means the order
// fails in that direction.
struct ConditionReport {
  bool fong_tsui = false; // |T| <= |Re T|
  double fong_tsui_defect = 0.0;
  bool fong_istratescu = false; // T*T <= (Re T)^2
  double fong_istratescu_defect = 0.0;
  bool self_adjoint = false;
  double asymmetry = 0.0; // ||T - T*||_F / ||T||_F, 0 for T = 0
  bool mortad_commutes = false; // T commutes with the polar symmetry of Re T
  double mortad_defect = 0.0;   // ||T u_tilde - u_tilde T||_F
};

struct PolarRealPart {
  ComplexMatrix u_tilde; // Hermitian, zero on N(Re T), sign of Re T elsewhere
  ComplexMatrix abs_real_part;
  double factor_residual = 0.0; // ||u_tilde |Re T| - Re T||_F
  // N(I - |Re T|) = N(u_tilde - Re T) read inside closure R(Re T); the raw
  // right-hand kernel also swallows N(Re T) because u_tilde vanishes there.
  bool unit_kernel_identity = false;
};

struct ClassMembership {
  bool contraction = false;
  double contraction_excess = 0.0; // sigma_max - 1
  bool pure_contraction = false;   // contraction with trivial N(I - T*T)
  bool isometry = false;
  double isometry_residual = 0.0;
  bool unitary = false;
  double unitary_residual = 0.0;
  bool symmetry = false; // unitary and self-adjoint
  bool partial_isometry = false;
  double partial_isometry_residual = 0.0; // ||(T*T)^2 - T*T||_F
  bool self_adjoint = false;
  double self_adjoint_residual = 0.0;
  bool hyponormal = false;
  double hyponormal_defect = 0.0;
  int nilpotent_order = 0; // least k <= n with T^k = 0; 0 if none
  std::map<int, bool> quasi_isometry; // per requested order m
  std::map<int, double> quasi_isometry_residual;
  bool two_isometry = false;
  double two_isometry_residual = 0.0; // ||T*^2 T^2 - 2 T*T + I||_F
};

struct BrownianDecomposition {
  double sigma = 0.0;   // sqrt(||T*T - I||)
  Subspace unit_part;   // N(T*T - I)
  Subspace defect_part; // closure R(T*T - I)
  // T = [[V, sigma*E], [0, U]] against unit_part + defect_part.
  ComplexMatrix v, e, u;
};

enum class BrownianStatus { ok, not_two_isometry, sigma_zero, structure_mismatch };

struct BrownianOutcome {
  BrownianStatus status = BrownianStatus::not_two_isometry;
  std::string detail;
  std::optional<BrownianDecomposition> decomposition;
};

// Block data of a 2-isometry against N(T*T - I) + closure R(T*T - I);
// residuals reported, nothing asserted.
struct TwoIsometryStructure {
  Subspace unit_part, defect_part;
  ComplexMatrix s, r, q;
  double triangular_residual = 0.0; // lower-left block of T
  double isometry_residual = 0.0;   // S*S - I on the unit part
  double s_star_r_residual = 0.0;
  double covariance_identity_residual = 0.0; // Q*AQ - A, A = R*R + Q*Q - I
  bool covariance_injective = true;          // A injective on the defect part
};

struct DouglasFactor {
  ComplexMatrix a;       // |T|^{1/2} pinv(|Re T|^{1/2})
  double norm = 0.0;     // ||A||; <= 1 exactly when the modulus order holds
  double residual = 0.0; // ||A |Re T|^{1/2} - |T|^{1/2}||_F
};

OperatorFunctions operator_functions(const ComplexMatrix& t,
                                     const Tolerances& tol = {});
ConditionReport fong_tsui_check(const ComplexMatrix& t,
                                const Tolerances& tol = {});
PolarRealPart polar_real_part(const ComplexMatrix& t,
                              const Tolerances& tol = {});
ClassMembership classify(const ComplexMatrix& t,
                         const std::vector<int>& quasi_orders = {1, 2, 3},
                         const Tolerances& tol = {});
BrownianOutcome brownian_decompose(const ComplexMatrix& t,
                                   const Tolerances& tol = {});
TwoIsometryStructure two_isometry_structure(const ComplexMatrix& t,
                                            const Tolerances& tol = {});
DouglasFactor douglas_factor(const ComplexMatrix& t,
                             const Tolerances& tol = {});

} // namespace ftk
