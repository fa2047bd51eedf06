// ftkit: analyze one operator, generate class members, run the named
// decompositions, and drive the verification suites from the shell.
//
// Exit codes: 0 success / all checks passed, 1 a check or suite failed,
// 2 unusable input (parse, format, domain, usage).

#include <charconv>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ftk/errors.hpp"
#include "ftk/generators.hpp"
#include "ftk/matrix_io.hpp"
#include "ftk/report.hpp"

namespace {

using ftk::ComplexMatrix;
using ftk::Index;
using ftk::ordered_json;

std::pair<Index, Index> parse_dims(const std::string& s) {
  const auto parse_one = [&](std::string_view sv) -> Index {
    Index value = 0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (ec != std::errc() || ptr != sv.data() + sv.size())
      throw ftk::ParseError("bad dimension range: " + s);
    return value;
  };
  const std::string_view sv = s;
  const std::size_t dots = sv.find("..");
  if (dots == std::string_view::npos) {
    const Index n = parse_one(sv);
    return {n, n};
  }
  return {parse_one(sv.substr(0, dots)), parse_one(sv.substr(dots + 2))};
}

std::vector<int> parse_orders(const std::string& s) {
  std::vector<int> orders;
  std::string_view rest = s;
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    const std::string_view cell = rest.substr(0, comma);
    int m = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), m);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || m < 1)
      throw ftk::ParseError("bad order list: " + s);
    orders.push_back(m);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (orders.empty()) throw ftk::ParseError("bad order list: " + s);
  return orders;
}

void add_tolerance_flags(CLI::App* cmd, ftk::Tolerances& tol) {
  cmd->add_option("--tol-rank", tol.rank, "relative singular value cutoff");
  cmd->add_option("--tol-psd", tol.psd, "positivity slack");
  cmd->add_option("--tol-eq", tol.eq, "relative equality tolerance");
  cmd->add_option("--max-iter", tol.max_iter, "iteration cap for limits");
}

void add_format_flag(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
}

void emit(const ordered_json& j, const std::string& format) {
  std::cout << (format == "json" ? ftk::render_json(j) : ftk::render_text(j));
}

ordered_json decompose_result(const std::string& which, const ComplexMatrix& t,
                              const ftk::Tolerances& tol) {
  if (which == "max-pi") {
    const auto r = ftk::max_partial_isometric_subspace(t, tol);
    ordered_json j = ftk::to_json(r);
    j["reassembly_residual"] = r.two_block.reassembly_residual(t);
    return j;
  }
  if (which == "asymptotic") return ftk::to_json(ftk::asymptotic_limit(t, tol));
  if (which == "thm31") return ftk::to_json(ftk::unit_kernel_structure(t, tol));
  if (which == "form37")
    return ftk::to_json(ftk::canonical_triangular_form(t, tol));
  if (which == "rmk41") {
    const auto p = ftk::polar_real_part(t, tol);
    const auto c = ftk::fong_tsui_check(t, tol);
    return ordered_json{
        {"factor_residual", p.factor_residual},
        {"unit_kernel_identity", p.unit_kernel_identity},
        {"u_self_adjoint_residual", (p.u_tilde - p.u_tilde.adjoint()).norm()},
        {"mortad_commutes", c.mortad_commutes},
        {"mortad_defect", c.mortad_defect},
        {"u_tilde", ftk::matrix_json(p.u_tilde)},
        {"abs_real_part", ftk::matrix_json(p.abs_real_part)}};
  }
  // blocks23
  const auto d = ftk::three_block_form(t, tol);
  ordered_json j = ftk::to_json(d);
  j["reassembly_residual"] = d.reassembly_residual(t);
  return j;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional checks around the modulus order |T| <= |Re T|"};
  app.require_subcommand(1);
  int rc = 0;

  // analyze
  auto* analyze = app.add_subcommand("analyze", "full report on one operator");
  std::string an_path;
  ftk::Tolerances an_tol;
  std::string an_format = "text";
  std::string an_orders = "1,2,3";
  bool an_timings = false;
  analyze->add_option("file", an_path, "matrix file, or - for stdin")->required();
  analyze->add_option("--m", an_orders, "quasi-isometry orders, comma separated");
  analyze->add_flag("--timings", an_timings, "include wall-clock timings");
  add_tolerance_flags(analyze, an_tol);
  add_format_flag(analyze, an_format);
  analyze->callback([&] {
    const ComplexMatrix t = ftk::read_matrix(an_path);
    const auto rep =
        ftk::analyze_operator(t, an_tol, an_timings, parse_orders(an_orders));
    if (an_format == "json")
      std::cout << ftk::render_json(ftk::to_json(rep));
    else
      std::cout << ftk::to_text(rep);
  });

  // gen
  auto* gen = app.add_subcommand("gen", "draw one member of a named class");
  std::string g_class;
  ftk::ClassSpec g_spec;
  bool g_non_contractive = false;
  std::string g_out = "-";
  ftk::Tolerances g_tol;
  gen->add_option("class", g_class,
                  "unitary|symmetry|contraction|pure_contraction|"
                  "partial_isometry|nilpotent|m_quasi_isometry|"
                  "self_adjoint_contraction|hermitian_plus_perturbation")
      ->required();
  gen->add_option("--dim", g_spec.dim, "ambient dimension");
  gen->add_option("--seed", g_spec.seed, "draw seed");
  gen->add_option("--rank", g_spec.rank, "partial isometry rank");
  gen->add_option("--order", g_spec.order, "nilpotency index");
  gen->add_option("--m", g_spec.m, "quasi-isometry order");
  gen->add_option("--epsilon", g_spec.epsilon, "perturbation size");
  gen->add_flag("--non-contractive", g_non_contractive,
                "force operator norm above one (quasi-isometries)");
  gen->add_option("-o,--output", g_out, "output file, - for stdout");
  add_tolerance_flags(gen, g_tol);
  gen->callback([&] {
    g_spec.kind = ftk::parse_kind(g_class);
    g_spec.contractive = !g_non_contractive;
    ftk::write_matrix(g_out, ftk::generate(g_spec, g_tol));
  });

  // decompose
  auto* dec = app.add_subcommand("decompose", "one named decomposition");
  std::string d_path, d_which;
  ftk::Tolerances d_tol;
  std::string d_format = "text";
  dec->add_option("file", d_path, "matrix file, or - for stdin")->required();
  dec->add_option("--which", d_which, "decomposition to run")
      ->required()
      ->check(CLI::IsMember(
          {"max-pi", "asymptotic", "thm31", "form37", "rmk41", "blocks23"}));
  add_tolerance_flags(dec, d_tol);
  add_format_flag(dec, d_format);
  dec->callback([&] {
    const ComplexMatrix t = ftk::read_matrix(d_path);
    ordered_json j;
    j["schema"] = "ftk-decompose-v1";
    j["which"] = d_which;
    j["input"] = ordered_json{{"digest", ftk::matrix_digest(t)},
                              {"rows", t.rows()},
                              {"cols", t.cols()}};
    j["tolerances"] = ftk::to_json(d_tol);
    j["result"] = decompose_result(d_which, t, d_tol);
    emit(j, d_format);
  });

  // verify
  auto* ver = app.add_subcommand(
      "verify", "run one verification suite: thm21|thm31|cor22|cor35|rmk23|"
                "oracle10|findim11|polar41|douglas42");
  std::string v_suite;
  int v_trials = 200;
  std::string v_dims = "2..8";
  std::uint64_t v_seed = 0;
  ftk::Tolerances v_tol;
  std::string v_format = "text";
  ver->add_option("suite", v_suite, "suite id")->required();
  ver->add_option("--trials", v_trials, "trial count");
  ver->add_option("--dims", v_dims, "dimension range A..B");
  ver->add_option("--seed", v_seed, "base seed");
  add_tolerance_flags(ver, v_tol);
  add_format_flag(ver, v_format);
  ver->callback([&] {
    const auto [lo, hi] = parse_dims(v_dims);
    const auto rep = ftk::theorem_suite(v_suite, v_trials, lo, hi, v_seed, v_tol);
    if (v_format == "json")
      std::cout << ftk::render_json(ftk::to_json(rep));
    else
      std::cout << ftk::to_text(rep);
    rc = rep.all_pass() ? 0 : 1;
  });

  // fuzz
  auto* fz = app.add_subcommand("fuzz", "random operators through the verdict");
  int f_trials = 200;
  std::string f_dims = "2..8";
  std::uint64_t f_seed = 0;
  ftk::Tolerances f_tol;
  std::string f_format = "text";
  fz->add_option("--trials", f_trials, "trial count");
  fz->add_option("--dims", f_dims, "dimension range A..B");
  fz->add_option("--seed", f_seed, "base seed");
  add_tolerance_flags(fz, f_tol);
  add_format_flag(fz, f_format);
  fz->callback([&] {
    const auto [lo, hi] = parse_dims(f_dims);
    const auto rep = ftk::run_fuzz(lo, hi, f_trials, f_seed, f_tol);
    if (f_format == "json")
      std::cout << ftk::render_json(ftk::to_json(rep));
    else
      std::cout << ftk::to_text(rep);
    rc = rep.sound() ? 0 : 1;
  });

  // example
  auto* ex = app.add_subcommand("example", "built-in worked example");
  std::string e_name;
  Index e_half = 1;
  std::string e_out = "-";
  std::string e_format = "text";
  ex->add_option("name", e_name, "example id")
      ->required()
      ->check(CLI::IsMember({"rmk41"}));
  ex->add_option("--half-dim", e_half, "half dimension of the block shift")
      ->check(CLI::PositiveNumber);
  ex->add_option("-o,--output", e_out, "where the operator goes, - for stdout");
  add_format_flag(ex, e_format);
  ex->callback([&] {
    const auto [t, u] = ftk::block_shift_pair(e_half);
    const Index n = 2 * e_half;
    ComplexMatrix top = ComplexMatrix::Zero(n, n);
    top.topLeftCorner(e_half, e_half).setIdentity();
    ComplexMatrix bottom = ComplexMatrix::Zero(n, n);
    bottom.bottomRightCorner(e_half, e_half).setIdentity();
    const ComplexMatrix gram = t.adjoint() * t;
    const ordered_json identities{
        {"tu_identity_residual", (t * u - top).norm()},
        {"ut_identity_residual", (u * t - bottom).norm()},
        {"u_self_adjoint_residual", (u - u.adjoint()).norm()},
        {"u_involution_residual", (u * u - ComplexMatrix::Identity(n, n)).norm()},
        {"t_partial_isometry_residual", (gram * gram - gram).norm()}};
    if (e_format == "json") {
      // Machine form: the whole worked example in one document.
      ordered_json j;
      j["schema"] = "ftk-example-v1";
      j["example"] = "rmk41";
      j["half_dim"] = e_half;
      j["t"] = ftk::matrix_json(t);
      j["u"] = ftk::matrix_json(u);
      j["identities"] = identities;
      std::cout << ftk::render_json(j);
    } else {
      // The operator goes to the chosen sink so it can feed analyze through a
      // pipe; the identity residuals go to stderr.
      ftk::write_matrix(e_out, t);
      std::cerr << ftk::render_text(identities);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ftk::TheoremViolation& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 1;
  } catch (const ftk::NoConvergence& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return 1;
  } catch (const ftk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
