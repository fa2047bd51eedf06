#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftk/conjecture.hpp"
#include "ftk/decompositions.hpp"

namespace ftk {

using ordered_json = nlohmann::ordered_json;

// Everything analyze computes for one operator. Timings are measured only on
// request so that the default serialized report is a pure function of the
// input bytes and tolerances.
struct AnalysisReport {
  std::string digest;
  Index rows = 0;
  Index cols = 0;
  Tolerances tol;
  OperatorFunctions functions;
  double frobenius_norm = 0.0;
  RealVector singular_values;       // of T, descending
  RealVector real_part_eigenvalues; // of Re T, ascending
  ConditionReport condition;
  ClassMembership classes;
  // Filled for contractions only; note says why when absent.
  std::string contraction_note;
  std::optional<MaxPartialIsometricResult> max_pi;
  double reassembly_residual = 0.0;
  std::optional<KernelStructureReport> kernel_structure;
  Verdict verdict;
  double elapsed_ms = -1.0; // negative: not measured
};

AnalysisReport analyze_operator(const ComplexMatrix& t,
                                const Tolerances& tol = {},
                                bool with_timings = false,
                                const std::vector<int>& quasi_orders = {1, 2,
                                                                        3});

ordered_json matrix_json(const ComplexMatrix& m);
ordered_json to_json(const Tolerances& tol);
ordered_json to_json(const ConditionReport& c);
ordered_json to_json(const ClassMembership& c);
ordered_json to_json(const BlockDecomposition& d);
ordered_json to_json(const MaxPartialIsometricResult& r);
ordered_json to_json(const AsymptoticLimit& a);
ordered_json to_json(const KernelStructureReport& k);
ordered_json to_json(const CanonicalTriangularForm& f);
ordered_json to_json(const Verdict& v);
ordered_json to_json(const SuiteReport& s);
ordered_json to_json(const FuzzReport& f);
ordered_json to_json(const AnalysisReport& r);

// dump(2) plus trailing newline; the byte-stable wire form.
std::string render_json(const ordered_json& j);
// Generic "key: value" rendering with two-space nesting; {rows,cols,data}
// objects print as matrices.
std::string render_text(const ordered_json& j);

std::string to_text(const AnalysisReport& r);
std::string to_text(const SuiteReport& s);
std::string to_text(const FuzzReport& f);

} // namespace ftk
