#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstring>

#include "ftk/conjecture.hpp"
#include "ftk/errors.hpp"
#include "ftk/generators.hpp"
#include "ftk/operator_props.hpp"

#include "test_util.hpp"

using namespace ftk;
using testutil::diag;
using testutil::dist;
using testutil::mat;

namespace {

bool has_label(const Verdict& v, const std::string& label) {
  return std::any_of(v.certificate.begin(), v.certificate.end(),
                     [&](const CertificateBranch& b) { return b.label == label; });
}

} // namespace

TEST_CASE("verdict on the nilpotent shift") {
  Verdict v = verdict(mat({{0, 1}, {0, 0}}));
  CHECK(!v.condition.fong_tsui);
  CHECK(!v.self_adjoint);
  CHECK(v.defect == doctest::Approx(-0.5).epsilon(1e-10));
  // |Re T| - |T| = diag(0.5, -0.5); the violated direction is the second
  // coordinate.
  CHECK(std::abs(v.most_violated[1]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(v.most_violated[0]) < 1e-10);
  CHECK(has_label(v, "scaled-partial-isometry"));
  CHECK(has_label(v, "finite-dimensional"));
}

TEST_CASE("verdict on a symmetry lists the classical branches") {
  Verdict v = verdict(diag({1, -1}));
  CHECK(v.condition.fong_tsui);
  CHECK(v.self_adjoint);
  CHECK(has_label(v, "hyponormal"));
  CHECK(has_label(v, "scaled-partial-isometry"));
  CHECK(has_label(v, "polar-commutation"));
  CHECK(has_label(v, "finite-dimensional"));
  CHECK(has_label(v, "contractive-quasi-isometry-order-1"));
  CHECK(has_label(v, "expansive-triangular"));
  for (const CertificateBranch& b : v.certificate)
    CHECK(b.residual <= 1e-8);
}

TEST_CASE("verdict on a random self-adjoint contraction") {
  ClassSpec spec;
  spec.kind = OperatorKind::self_adjoint_contraction;
  spec.dim = 6;
  spec.seed = 13;
  Verdict v = verdict(generate(spec));
  CHECK(v.condition.fong_tsui);
  CHECK(v.self_adjoint);
  CHECK(has_label(v, "finite-dimensional"));
  CHECK(has_label(v, "hyponormal"));
}

TEST_CASE("verdict edge cases") {
  Verdict z = verdict(ComplexMatrix::Zero(3, 3));
  CHECK(z.self_adjoint);
  CHECK(z.certificate.size() == 1);
  CHECK(z.certificate[0].label == "finite-dimensional");

  CHECK_THROWS_AS(verdict(ComplexMatrix::Zero(2, 3)), DimensionMismatch);
}

TEST_CASE("verdict certificates match the classes they cite") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ClassSpec spec;
    spec.kind = OperatorKind::partial_isometry;
    spec.dim = 5;
    spec.rank = 3;
    spec.seed = seed;
    ComplexMatrix t = generate(spec);
    Verdict v = verdict(t);
    CHECK(has_label(v, "scaled-partial-isometry"));
    ClassMembership cls = classify(t, {1, 2});
    CHECK(has_label(v, "hyponormal") == cls.hyponormal);
    CHECK(has_label(v, "contractive-quasi-isometry-order-2") ==
          (cls.contraction && cls.quasi_isometry.at(2)));
  }
}

TEST_CASE("verdict settles borderline defects at tightened tolerance") {
  // H + eps*J with J antisymmetric crosses the near-violation band as eps
  // shrinks; every point of the sweep must stay sound and at least one must
  // be settled by the tightened recheck.
  ComplexMatrix h = diag({1.0, 0.5});
  ComplexMatrix j = mat({{0, 1}, {-1, 0}});
  bool saw_borderline = false;
  for (double eps : {1e-7, 3e-8, 1e-8, 3e-9, 1e-9, 3e-10, 1e-10}) {
    Verdict v = verdict(h + eps * j);
    if (v.condition.fong_tsui) CHECK(v.self_adjoint);
    saw_borderline = saw_borderline || v.borderline;
  }
  CHECK(saw_borderline);
}

TEST_CASE("search is deterministic and respects the constraint") {
  SearchResult a = counterexample_search(3, 6, 80, 0.1, 42);
  SearchResult b = counterexample_search(3, 6, 80, 0.1, 42);
  CHECK(a.best_defect == b.best_defect);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.trace == b.trace);
  CHECK(std::memcmp(a.incumbent.data(), b.incumbent.data(),
                    sizeof(Complex) * static_cast<size_t>(a.incumbent.size())) == 0);
  CHECK(a.trace.size() == 6);
  CHECK(a.best_asymmetry >= 0.1);
  CHECK(std::abs(a.incumbent.norm() - 1.0) < 1e-12);

  SearchResult c = counterexample_search(3, 6, 80, 0.1, 43);
  CHECK(a.best_defect != c.best_defect);
}

TEST_CASE("search never certifies a counterexample") {
  for (Index dim : {2, 3, 4}) {
    SearchResult r = counterexample_search(dim, 10, 120, 0.1,
                                           100 + static_cast<std::uint64_t>(dim));
    CHECK(r.best_defect < -1e-4);
    CHECK(r.best_asymmetry >= 0.1);
  }
}

TEST_CASE("search with delta zero parks on self-adjoint points") {
  SearchResult r = counterexample_search(3, 4, 50, 0.0, 9);
  CHECK(r.best_defect > -1e-9);
  CHECK(r.best_defect <= 1e-12);
}

TEST_CASE("search rejects dimension one") {
  CHECK_THROWS_AS(counterexample_search(1, 2, 10, 0.1, 1), DimensionMismatch);
}

TEST_CASE("suite dispatch") {
  CHECK(suite_ids().size() == 9);
  CHECK_THROWS_AS(theorem_suite("thm99", 1, 2, 4, 1), UnknownSuite);
  CHECK_THROWS_AS(theorem_suite("thm21", 1, 0, 4, 1), DimensionMismatch);
  CHECK_THROWS_AS(theorem_suite("thm21", 1, 4, 2, 1), DimensionMismatch);
}

TEST_CASE("every suite passes a smoke run") {
  for (const std::string& id : suite_ids()) {
    int trials = id == "cor35" ? 24 : 36;
    SuiteReport rep = theorem_suite(id, trials, 2, 6, 7);
    INFO(id, " failures: ", rep.failures, " notes: ",
         rep.notes.empty() ? "" : rep.notes.front());
    CHECK(rep.all_pass());
    CHECK(rep.passes == rep.trials);
    CHECK(rep.failing_seeds.empty());
    CHECK(rep.suite == id);
  }
}

TEST_CASE("suite reports carry the recorded observations") {
  SuiteReport rep = theorem_suite("cor22", 60, 2, 7, 11);
  CHECK(rep.all_pass());
  bool saw_split_note = false;
  bool saw_reverse_note = false;
  for (const std::string& n : rep.notes) {
    saw_split_note = saw_split_note || n.find("splitting criterion held") != std::string::npos;
    saw_reverse_note = saw_reverse_note ||
                       n.find("pure-but-not-invariant") != std::string::npos;
  }
  CHECK(saw_split_note);
  CHECK(saw_reverse_note);

  SuiteReport polar = theorem_suite("polar41", 8, 2, 4, 1);
  CHECK(polar.all_pass());
  CHECK(polar.worst.at("tu-identity") == 0.0);
  CHECK(polar.worst.at("ut-identity") == 0.0);
  CHECK(polar.worst.at("u-involution") == 0.0);
}

TEST_CASE("rmk23 includes the strict-inclusion witnesses") {
  SuiteReport rep = theorem_suite("rmk23", 10, 2, 5, 3);
  CHECK(rep.all_pass());
  CHECK(rep.trials == 12); // 10 sampled + 2 fixed witnesses
  CHECK(rep.worst.count("witness-mk-span") == 1);
}

TEST_CASE("fuzz stays sound on random contractions") {
  FuzzReport rep = run_fuzz(2, 6, 60, 5);
  CHECK(rep.sound());
  CHECK(rep.trials == 60);
  CHECK(rep.violation_seeds.empty());
  CHECK(rep.worst_defect < 0.0); // the corpus is generically asymmetric
}
