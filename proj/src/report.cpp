#include "ftk/report.hpp"

#include <chrono>
#include <sstream>

#include "ftk/errors.hpp"
#include "ftk/matrix_io.hpp"

namespace ftk {

namespace {

ordered_json real_vector_json(const RealVector& v) {
  ordered_json a = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ordered_json complex_vector_json(const ComplexVector& v) {
  ordered_json a = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i)
    a.push_back(ordered_json::array({v[i].real(), v[i].imag()}));
  return a;
}

ordered_json seed_list_json(const std::vector<std::uint64_t>& seeds) {
  // Seeds routinely exceed 2^53; strings keep them exact in JSON.
  ordered_json a = ordered_json::array();
  for (const auto s : seeds) a.push_back(std::to_string(s));
  return a;
}

std::string scalar_text(const ordered_json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

bool inline_array(const ordered_json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (e.is_object()) return false;
    if (e.is_array())
      for (const auto& inner : e)
        if (!inner.is_number()) return false;
  }
  return true;
}

bool is_matrix_object(const ordered_json& j) {
  return j.is_object() && j.size() == 3 && j.contains("rows") &&
         j.contains("cols") && j.contains("data");
}

void render_matrix(std::ostringstream& out, const ordered_json& j,
                   const std::string& pad) {
  const auto rows = j["rows"].get<Index>();
  const auto cols = j["cols"].get<Index>();
  out << rows << "x" << cols << " matrix\n";
  const auto& data = j["data"];
  for (Index i = 0; i < rows; ++i) {
    out << pad << "  ";
    for (Index k = 0; k < cols; ++k) {
      const auto& cell = data[static_cast<std::size_t>(i * cols + k)];
      if (k > 0) out << ", ";
      const double re = cell[0].get<double>();
      const double im = cell[1].get<double>();
      out << ordered_json(re).dump();
      if (im != 0.0) out << (im > 0 ? "+" : "") << ordered_json(im).dump() << "i";
    }
    out << "\n";
  }
}

void render_node(std::ostringstream& out, const ordered_json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_matrix_object(value)) {
        out << pad << key << ": ";
        render_matrix(out, value, pad);
      } else if (value.is_object() || (value.is_array() && !inline_array(value))) {
        out << pad << key << ":\n";
        render_node(out, value, depth + 1);
      } else if (inline_array(value)) {
        out << pad << key << ": " << value.dump() << "\n";
      } else {
        out << pad << key << ": " << scalar_text(value) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_object() || value.is_array()) {
        out << pad << "-\n";
        render_node(out, value, depth + 1);
      } else {
        out << pad << "- " << scalar_text(value) << "\n";
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

double block_norm(const ComplexMatrix& b) { return b.size() == 0 ? 0.0 : op_norm(b); }

} // namespace

AnalysisReport analyze_operator(const ComplexMatrix& t, const Tolerances& tol,
                                bool with_timings,
                                const std::vector<int>& quasi_orders) {
  const auto start = std::chrono::steady_clock::now();
  if (t.rows() != t.cols())
    throw DimensionMismatch("analyze needs a square matrix, got " +
                            std::to_string(t.rows()) + "x" +
                            std::to_string(t.cols()));
  AnalysisReport rep;
  rep.digest = matrix_digest(t);
  rep.rows = t.rows();
  rep.cols = t.cols();
  rep.tol = tol;
  rep.functions = operator_functions(t, tol);
  rep.frobenius_norm = t.norm();
  rep.singular_values = svd(t).singular_values;
  rep.real_part_eigenvalues = hermitian_eig(rep.functions.real_part, tol).eigenvalues;
  rep.condition = fong_tsui_check(t, tol);
  rep.classes = classify(t, quasi_orders, tol);
  if (rep.classes.contraction) {
    rep.max_pi = max_partial_isometric_subspace(t, tol);
    rep.reassembly_residual = rep.max_pi->two_block.reassembly_residual(t);
    rep.kernel_structure = unit_kernel_structure(t, tol);
  } else {
    rep.contraction_note =
        "operator norm exceeds one: the partial-isometry and kernel "
        "summaries apply to contractions";
  }
  rep.verdict = verdict(t, tol);
  if (with_timings) {
    const auto stop = std::chrono::steady_clock::now();
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  }
  return rep;
}

ordered_json matrix_json(const ComplexMatrix& m) {
  ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  ordered_json data = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k)
      data.push_back(ordered_json::array({m(i, k).real(), m(i, k).imag()}));
  j["data"] = std::move(data);
  return j;
}

ordered_json to_json(const Tolerances& tol) {
  return ordered_json{{"rank", tol.rank},
                      {"psd", tol.psd},
                      {"eq", tol.eq},
                      {"max_iter", tol.max_iter},
                      {"conv", tol.conv}};
}

ordered_json to_json(const ConditionReport& c) {
  return ordered_json{{"fong_tsui_holds", c.fong_tsui},
                      {"fong_tsui_defect", c.fong_tsui_defect},
                      {"fong_istratescu_holds", c.fong_istratescu},
                      {"fong_istratescu_defect", c.fong_istratescu_defect},
                      {"self_adjoint", c.self_adjoint},
                      {"asymmetry", c.asymmetry},
                      {"mortad_commutes", c.mortad_commutes},
                      {"mortad_defect", c.mortad_defect}};
}

ordered_json to_json(const ClassMembership& c) {
  ordered_json quasi;
  for (const auto& [m, holds] : c.quasi_isometry)
    quasi[std::to_string(m)] = ordered_json{
        {"holds", holds}, {"residual", c.quasi_isometry_residual.at(m)}};
  return ordered_json{
      {"contraction", c.contraction},
      {"contraction_excess", c.contraction_excess},
      {"pure_contraction", c.pure_contraction},
      {"isometry", c.isometry},
      {"isometry_residual", c.isometry_residual},
      {"unitary", c.unitary},
      {"unitary_residual", c.unitary_residual},
      {"symmetry", c.symmetry},
      {"partial_isometry", c.partial_isometry},
      {"partial_isometry_residual", c.partial_isometry_residual},
      {"self_adjoint", c.self_adjoint},
      {"self_adjoint_residual", c.self_adjoint_residual},
      {"hyponormal", c.hyponormal},
      {"hyponormal_defect", c.hyponormal_defect},
      {"nilpotent_order", c.nilpotent_order},
      {"quasi_isometry", std::move(quasi)},
      {"two_isometry", c.two_isometry},
      {"two_isometry_residual", c.two_isometry_residual}};
}

ordered_json to_json(const BlockDecomposition& d) {
  ordered_json dims = ordered_json::array();
  for (const auto& p : d.parts) dims.push_back(p.rank());
  ordered_json norms = ordered_json::array();
  for (const auto& row : d.blocks) {
    ordered_json r = ordered_json::array();
    for (const auto& b : row) r.push_back(block_norm(b));
    norms.push_back(std::move(r));
  }
  return ordered_json{{"labels", d.labels},
                      {"part_dims", std::move(dims)},
                      {"block_norms", std::move(norms)}};
}

ordered_json to_json(const MaxPartialIsometricResult& r) {
  return ordered_json{
      {"dims",
       ordered_json{{"kernel", r.kernel_part.rank()},
                    {"unit_kernel", r.unit_kernel.rank()},
                    {"lifted_kernel", r.lifted_kernel.rank()},
                    {"m", r.m.rank()},
                    {"m_perp", r.m.ambient - r.m.rank()},
                    {"q_unit_kernel", r.q_unit_kernel.rank()}}},
      {"two_block", to_json(r.two_block)},
      {"three_block", to_json(r.three_block)},
      {"w_partial_isometry", r.w_partial_isometry},
      {"w_residual", r.w_residual},
      {"w_star_r_residual", r.w_star_r_residual},
      {"invariance_residual", r.invariance_residual},
      {"q_kernel_contained", r.q_kernel_contained},
      {"q_kernel_defect", r.q_kernel_defect},
      {"q_pure", r.q_pure},
      {"n_sum_invariant", r.n_sum_invariant},
      {"n_sum_defect", r.n_sum_defect},
      {"split_criterion", r.split_criterion},
      {"split_criterion_defect", r.split_criterion_defect}};
}

ordered_json to_json(const AsymptoticLimit& a) {
  return ordered_json{{"iterations", a.iterations},
                      {"final_step", a.final_step},
                      {"max_isometric_dim", a.max_isometric.rank()},
                      {"s", matrix_json(a.s)}};
}

ordered_json to_json(const KernelStructureReport& k) {
  ordered_json j{{"condition", to_json(k.condition)},
                 {"dims",
                  ordered_json{{"unit_tt", k.unit_tt.rank()},
                               {"unit_ttstar", k.unit_ttstar.rank()},
                               {"unit_abs_re", k.unit_abs_re.rank()}}},
                 {"kernel_distance", k.kernel_distance},
                 {"kernels_equal", k.kernels_equal},
                 {"structure_computed", k.structure_computed},
                 {"borderline", k.borderline}};
  if (k.structure_computed) {
    j["reduction_residual"] = k.reduction_residual;
    j["symmetry_sa_residual"] = k.symmetry_sa_residual;
    j["symmetry_sq_residual"] = k.symmetry_sq_residual;
    j["re_kernel_identity"] = k.re_kernel_identity;
    j["re_kernel_distance"] = k.re_kernel_distance;
    j["adjoint_kernel_split"] = k.adjoint_kernel_split;
    j["adjoint_kernel_distance"] = k.adjoint_kernel_distance;
    j["kernels_match"] = k.kernels_match;
    j["kernel_match_distance"] = k.kernel_match_distance;
    if (k.diag_split) {
      const DiagonalSplit& d = *k.diag_split;
      j["diag_split"] = ordered_json{
          {"g_dim", d.g.rank()},
          {"off_diagonal_residual", d.off_diagonal_residual},
          {"u_self_adjoint_residual", d.u_self_adjoint_residual},
          {"u_involution_residual", d.u_involution_residual},
          {"z_pure_contraction", d.z_pure_contraction},
          {"z_condition_holds", d.z_condition_holds}};
    } else {
      j["diag_split"] = nullptr;
    }
    j["triangular"] = to_json(k.triangular);
    j["zero_pattern_residual"] = k.zero_pattern_residual;
  }
  return j;
}

ordered_json to_json(const CanonicalTriangularForm& f) {
  ordered_json j{{"norm", f.norm},
                 {"g_dim", f.g.rank()},
                 {"dec", to_json(f.dec)},
                 {"isometry_residual", f.isometry_residual},
                 {"triangular_residual", f.triangular_residual},
                 {"r_injective", f.r_injective},
                 {"q_square_zero", f.q_square_zero},
                 {"q_square_residual", f.q_square_residual},
                 {"expansive", f.expansive},
                 {"q_contraction", f.q_contraction}};
  j["s_star_r_residual"] = f.s_star_r_residual ? ordered_json(*f.s_star_r_residual)
                                               : ordered_json(nullptr);
  j["r_partial_isometry"] = f.r_partial_isometry
                                ? ordered_json(*f.r_partial_isometry)
                                : ordered_json(nullptr);
  return j;
}

ordered_json to_json(const Verdict& v) {
  ordered_json branches = ordered_json::array();
  for (const auto& b : v.certificate)
    branches.push_back(ordered_json{{"label", b.label}, {"residual", b.residual}});
  return ordered_json{{"condition_holds", v.condition.fong_tsui},
                      {"self_adjoint", v.self_adjoint},
                      {"borderline", v.borderline},
                      {"defect", v.defect},
                      {"most_violated", complex_vector_json(v.most_violated)},
                      {"certificate", std::move(branches)}};
}

ordered_json to_json(const SuiteReport& s) {
  ordered_json worst;
  for (const auto& [name, value] : s.worst) worst[name] = value;
  return ordered_json{{"suite", s.suite},
                      {"trials", s.trials},
                      {"passes", s.passes},
                      {"failures", s.failures},
                      {"failing_seeds", seed_list_json(s.failing_seeds)},
                      {"worst", std::move(worst)},
                      {"notes", s.notes},
                      {"all_pass", s.all_pass()}};
}

ordered_json to_json(const FuzzReport& f) {
  return ordered_json{{"trials", f.trials},
                      {"violations", f.violations},
                      {"borderline", f.borderline},
                      {"worst_defect", f.worst_defect},
                      {"violation_seeds", seed_list_json(f.violation_seeds)},
                      {"sound", f.sound()}};
}

ordered_json to_json(const AnalysisReport& r) {
  ordered_json j;
  j["schema"] = "ftk-analysis-v1";
  j["input"] = ordered_json{{"digest", r.digest},
                            {"rows", r.rows},
                            {"cols", r.cols},
                            {"operator_norm", r.functions.norm},
                            {"frobenius_norm", r.frobenius_norm}};
  j["tolerances"] = to_json(r.tol);
  j["spectra"] =
      ordered_json{{"singular_values", real_vector_json(r.singular_values)},
                   {"real_part_eigenvalues",
                    real_vector_json(r.real_part_eigenvalues)}};
  j["condition"] = to_json(r.condition);
  j["classes"] = to_json(r.classes);
  if (r.max_pi) {
    j["max_partial_isometry"] = to_json(*r.max_pi);
    j["max_partial_isometry"]["reassembly_residual"] = r.reassembly_residual;
  } else {
    j["max_partial_isometry"] = nullptr;
  }
  j["kernel_structure"] =
      r.kernel_structure ? to_json(*r.kernel_structure) : ordered_json(nullptr);
  if (!r.contraction_note.empty()) j["note"] = r.contraction_note;
  j["verdict"] = to_json(r.verdict);
  if (r.elapsed_ms >= 0.0)
    j["timings"] = ordered_json{{"elapsed_ms", r.elapsed_ms}};
  return j;
}

std::string render_json(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string render_text(const ordered_json& j) {
  std::ostringstream out;
  render_node(out, j, 0);
  return out.str();
}

std::string to_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "modulus order |T| <= |Re T|: "
      << (r.condition.fong_tsui ? "holds" : "fails") << " (defect "
      << ordered_json(r.condition.fong_tsui_defect).dump() << ")\n";
  out << "self-adjoint: " << (r.condition.self_adjoint ? "yes" : "no")
      << " (asymmetry " << ordered_json(r.condition.asymmetry).dump() << ")\n";
  out << "\n";
  out << render_text(to_json(r));
  return out.str();
}

std::string to_text(const SuiteReport& s) {
  std::ostringstream out;
  out << "suite " << s.suite << ": " << s.trials << " trials, " << s.passes
      << " passed, " << s.failures << " failed\n";
  if (!s.failing_seeds.empty()) {
    out << "failing seeds:";
    for (const auto seed : s.failing_seeds) out << " " << seed;
    out << "\n";
  }
  if (!s.worst.empty()) {
    out << "worst residuals:\n";
    for (const auto& [name, value] : s.worst)
      out << "  " << name << ": " << ordered_json(value).dump() << "\n";
  }
  for (const auto& note : s.notes) out << "note: " << note << "\n";
  out << (s.all_pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string to_text(const FuzzReport& f) {
  std::ostringstream out;
  out << "fuzz: " << f.trials << " trials, " << f.violations << " violations, "
      << f.borderline << " borderline, worst defect "
      << ordered_json(f.worst_defect).dump() << "\n";
  if (!f.violation_seeds.empty()) {
    out << "violation seeds:";
    for (const auto seed : f.violation_seeds) out << " " << seed;
    out << "\n";
  }
  out << (f.sound() ? "SOUND" : "UNSOUND") << "\n";
  return out.str();
}

} // namespace ftk
