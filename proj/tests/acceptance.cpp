// Acceptance gate: ten checks, one PASS/FAIL line each, nonzero exit on any
// failure. Every numeric bound here is the advertised one, not a loosened
// stand-in.

#include <chrono>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "ftk/conjecture.hpp"
#include "ftk/decompositions.hpp"
#include "ftk/generators.hpp"
#include "ftk/operator_props.hpp"
#include "ftk/rng.hpp"

using namespace ftk;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FTKIT_BIN) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  char buf[4096];
  std::string out;
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

bool note(const char* what, bool ok) {
  if (!ok) std::fprintf(stderr, "  detail: %s\n", what);
  return ok;
}

// 1. The worked block-shift example reproduces its identities exactly,
//    through the installed binary.
bool block_shift_example_exact() {
  for (int h = 1; h <= 4; ++h) {
    const auto r = run_cli("example rmk41 --half-dim " + std::to_string(h) +
                           " --format json");
    if (!note("example command exited nonzero", r.exit_code == 0)) return false;
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(r.out);
    } catch (...) {
      return note("example output is not json", false);
    }
    for (const auto& [key, value] : j["identities"].items()) {
      if (value.get<double>() != 0.0) {
        std::fprintf(stderr, "  detail: %s = %.3e at half-dim %d\n",
                     key.c_str(), value.get<double>(), h);
        return false;
      }
    }
  }
  return true;
}

// 2. Closed-form values for the 2x2 shift.
bool shift_closed_forms() {
  ComplexMatrix q = ComplexMatrix::Zero(2, 2);
  q(0, 1) = 1.0;
  const OperatorFunctions f = operator_functions(q);
  ComplexMatrix mod_expected = ComplexMatrix::Zero(2, 2);
  mod_expected(1, 1) = 1.0;
  const ComplexMatrix abs_re_expected = 0.5 * ComplexMatrix::Identity(2, 2);
  if (!note("modulus differs from diag(0,1)",
            (f.modulus - mod_expected).cwiseAbs().maxCoeff() <= 1e-12))
    return false;
  if (!note("|Re Q| differs from diag(1/2,1/2)",
            (f.abs_real_part - abs_re_expected).cwiseAbs().maxCoeff() <= 1e-12))
    return false;
  const ConditionReport c = fong_tsui_check(q);
  return note("defect is not -1/2",
              !c.fong_tsui && std::abs(c.fong_tsui_defect + 0.5) <= 1e-10);
}

// 3. The square-order criterion agrees with numerical self-adjointness on a
//    mixed corpus of 1000 seeded draws.
bool square_order_oracle() {
  const SuiteReport rep = theorem_suite("oracle10", 1000, 2, 8, 20260816);
  return note("oracle suite failed", rep.all_pass() && rep.trials == 1000);
}

// 4. No contraction shows a nonnegative order defect together with genuine
//    asymmetry: 10000 seeded draws, a direct search, and the fuzz command.
bool no_counterexample_found() {
  const Tolerances tol;
  for (int i = 0; i < 10000; ++i) {
    ClassSpec spec;
    spec.kind = OperatorKind::contraction;
    spec.dim = 2 + (i % 7);
    spec.seed = static_cast<std::uint64_t>(i);
    const ComplexMatrix t = generate(spec);
    const ConditionReport c = fong_tsui_check(t, tol);
    if (c.fong_tsui_defect >= -tol.psd && c.asymmetry >= 0.1) {
      std::fprintf(stderr, "  detail: seed %d defect %.3e asymmetry %.3e\n", i,
                   c.fong_tsui_defect, c.asymmetry);
      return false;
    }
  }
  for (Index dim = 2; dim <= 6; ++dim) {
    const SearchResult sr =
        counterexample_search(dim, 50, 300, 0.1, 99 + static_cast<std::uint64_t>(dim));
    if (sr.best_defect >= -tol.psd) {
      std::fprintf(stderr, "  detail: search dim %ld best defect %.3e\n",
                   static_cast<long>(dim), sr.best_defect);
      return false;
    }
  }
  return note("fuzz command exited nonzero",
              run_cli("fuzz --dims 2..8 --trials 300 --seed 7").exit_code == 0);
}

// 5. Maximal partial-isometry subspace invariants on 1000 contractions.
bool max_pi_suite() {
  const SuiteReport rep = theorem_suite("thm21", 1000, 2, 12, 11);
  return note("max partial-isometry suite failed", rep.all_pass());
}

// 6. Unit-kernel structure on every draw satisfying the modulus order.
bool kernel_structure_suite() {
  const SuiteReport rep = theorem_suite("thm31", 600, 2, 12, 13);
  return note("kernel structure suite failed", rep.all_pass());
}

// 7. Asymptotic limits: convergence, operator bounds, fixed point, and the
//    strict-inclusion witnesses.
bool asymptotic_suite() {
  const SuiteReport rep = theorem_suite("rmk23", 400, 2, 12, 17);
  return note("asymptotic suite failed", rep.all_pass());
}

// 8. Contractive quasi-isometries of orders 3 and 4 split as a symmetry plus
//    nilpotent across 200 draws.
bool quasi_isometry_suite() {
  const SuiteReport rep = theorem_suite("cor35", 200, 2, 10, 19);
  return note("quasi-isometry suite failed", rep.all_pass() && rep.trials == 200);
}

// 9. The half-power factorization criterion matches the modulus order with
//    zero disagreements.
bool factorization_suite() {
  const SuiteReport rep = theorem_suite("douglas42", 1000, 2, 10, 23);
  return note("factorization suite failed", rep.all_pass());
}

// 10. Defect-operator outcomes: unitaries report a vanishing defect, random
//     draws are rejected, and the structural residuals vanish on unitaries.
bool defect_operator_outcomes() {
  for (int i = 0; i < 100; ++i) {
    const Index n = 2 + (i % 15);
    const ComplexMatrix u = random_unitary(1000 + static_cast<std::uint64_t>(i), n);
    if (!note("unitary did not report a vanishing defect",
              brownian_decompose(u).status == BrownianStatus::sigma_zero))
      return false;
    const TwoIsometryStructure s = two_isometry_structure(u);
    const double worst =
        std::max({s.triangular_residual, s.isometry_residual,
                  s.s_star_r_residual, s.covariance_identity_residual});
    if (worst > 1e-10) {
      std::fprintf(stderr, "  detail: unitary residual %.3e at trial %d\n",
                   worst, i);
      return false;
    }
  }
  for (int i = 0; i < 100; ++i) {
    const Index n = 2 + (i % 15);
    const ComplexMatrix g = gaussian_matrix(2000 + static_cast<std::uint64_t>(i), n, n);
    if (!note("random draw was not rejected",
              brownian_decompose(g).status == BrownianStatus::not_two_isometry))
      return false;
  }
  return true;
}

} // namespace

int main() {
  struct Criterion {
    const char* label;
    bool (*check)();
  };
  const Criterion criteria[] = {
      {"block shift example identities exact through the cli", block_shift_example_exact},
      {"2x2 shift closed forms: modulus, |Re|, defect", shift_closed_forms},
      {"square-order criterion tracks self-adjointness, 1000 draws", square_order_oracle},
      {"no asymmetric contraction attains the order (draws+search+fuzz)", no_counterexample_found},
      {"max partial-isometry invariants, 1000 contractions to dim 12", max_pi_suite},
      {"unit-kernel structure on every order-satisfying draw", kernel_structure_suite},
      {"asymptotic limits converge with certified isometric parts", asymptotic_suite},
      {"order-3/4 quasi-isometries split symmetry plus nilpotent", quasi_isometry_suite},
      {"half-power factorization matches the order, zero disagreements", factorization_suite},
      {"defect-operator outcomes on unitaries and random draws", defect_operator_outcomes},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.check();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "  detail: exception: %s\n", e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("%s  criterion %2d  (%5.1fs)  %s\n", ok ? "PASS" : "FAIL",
                index, secs, c.label);
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  if (failed) std::printf("%d of 10 criteria failed\n", failed);
  else std::printf("all 10 criteria passed\n");
  return failed ? 1 : 0;
}
