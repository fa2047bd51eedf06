#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ftk/linalg.hpp"
#include "ftk/operator_props.hpp"
#include "ftk/tolerances.hpp"

namespace ftk {

// One sufficient hypothesis for self-adjointness under the modulus order,
// named by what it checks. residual is the hypothesis recheck, not a margin.
struct CertificateBranch {
  std::string label;
  double residual = 0.0;
};

// Outcome of the modulus-order check on one operator. When the condition
// holds, certificate lists every branch whose hypothesis the operator
// satisfies (the finite-dimensional branch is always present); when it
// fails, the same list records which branches would have applied.
struct Verdict {
  ConditionReport condition;
  ClassMembership classes;
  bool self_adjoint = false;
  bool borderline = false; // settled only at tightened tolerance
  double defect = 0.0;     // min eigenvalue of |Re T| - |T|
  ComplexVector most_violated; // eigenvector at that eigenvalue
  std::vector<CertificateBranch> certificate;
};

// verdict never lets "condition holds but T != T*" pass silently: a
// candidate violation is re-run at tol/100 and, if it survives, thrown.
Verdict verdict(const ComplexMatrix& t, const Tolerances& tol = {});

struct SearchResult {
  double best_defect = 0.0;    // max over feasible evaluated points
  double best_asymmetry = 0.0; // ||T - T*||_F / ||T||_F at the incumbent
  ComplexMatrix incumbent;
  long evaluations = 0;
  std::vector<double> trace; // best defect per restart, by restart index
};

// Maximizes min-eig(|Re T| - |T|) over unit-Frobenius matrices with
// asymmetry >= delta. Infeasible proposals are rejected, never penalized.
// Deterministic in seed; restarts merge by index.
SearchResult counterexample_search(Index dim, int restarts,
                                   int iters_per_restart, double delta,
                                   std::uint64_t seed,
                                   const Tolerances& tol = {});

struct SuiteReport {
  std::string suite;
  int trials = 0;
  int passes = 0;
  int failures = 0;
  std::vector<std::uint64_t> failing_seeds;
  std::map<std::string, double> worst; // named residual -> worst seen
  std::vector<std::string> notes;      // recorded, not asserted
  bool all_pass() const { return failures == 0; }
};

// Known suite ids: thm21, thm31, cor22, cor35, rmk23, oracle10, findim11,
// polar41, douglas42. Throws UnknownSuite otherwise. dims give the inclusive
// dimension range sampled per trial.
SuiteReport theorem_suite(const std::string& suite_id, int trials,
                          Index dim_lo, Index dim_hi, std::uint64_t seed,
                          const Tolerances& tol = {});

const std::vector<std::string>& suite_ids();

struct FuzzReport {
  int trials = 0;
  int violations = 0; // condition held at tightened tol on T != T*
  int borderline = 0;
  double worst_defect = 0.0; // largest defect among non-self-adjoint draws
  std::vector<std::uint64_t> violation_seeds;
  bool sound() const { return violations == 0; }
};

// Random contractions through verdict; a surviving soundness violation is
// recorded with its seed instead of thrown, so a fuzz run always completes.
FuzzReport run_fuzz(Index dim_lo, Index dim_hi, int trials,
                    std::uint64_t seed, const Tolerances& tol = {});

} // namespace ftk
