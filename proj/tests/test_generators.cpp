#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <vector>

#include "ftk/errors.hpp"
#include "ftk/generators.hpp"
#include "ftk/operator_props.hpp"
#include "ftk/rng.hpp"
#include "ftk/subspace.hpp"

#include "test_util.hpp"

using namespace ftk;
using testutil::dist;

namespace {

bool bitwise_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(),
                     sizeof(Complex) * static_cast<size_t>(a.size())) == 0;
}

} // namespace

TEST_CASE("generation is deterministic for a fixed ClassSpec") {
  std::vector<ClassSpec> specs;
  for (OperatorKind kind :
       {OperatorKind::unitary, OperatorKind::symmetry,
        OperatorKind::contraction, OperatorKind::pure_contraction,
        OperatorKind::partial_isometry, OperatorKind::nilpotent,
        OperatorKind::m_quasi_isometry,
        OperatorKind::self_adjoint_contraction,
        OperatorKind::hermitian_plus_perturbation}) {
    ClassSpec spec;
    spec.kind = kind;
    spec.dim = 5;
    spec.seed = 42;
    spec.m = 2;
    specs.push_back(spec);
  }
  for (const ClassSpec& spec : specs) {
    ComplexMatrix a = generate(spec);
    ComplexMatrix b = generate(spec);
    CHECK(bitwise_equal(a, b));
  }
  ClassSpec other = specs[0];
  other.seed = 43;
  CHECK(!bitwise_equal(generate(specs[0]), generate(other)));
}

TEST_CASE("each class lands in its own class") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    for (Index n : {2, 5, 8}) {
      ClassSpec spec;
      spec.dim = n;
      spec.seed = seed;

      spec.kind = OperatorKind::unitary;
      ComplexMatrix u = generate(spec);
      CHECK(dist(u.adjoint() * u, ComplexMatrix::Identity(n, n)) < 1e-12);

      spec.kind = OperatorKind::symmetry;
      ComplexMatrix j = generate(spec);
      CHECK(dist(j, j.adjoint()) < 1e-12);
      CHECK(dist(j * j, ComplexMatrix::Identity(n, n)) < 1e-12);

      spec.kind = OperatorKind::contraction;
      CHECK(op_norm(generate(spec)) == doctest::Approx(1.0).epsilon(1e-12));

      spec.kind = OperatorKind::pure_contraction;
      ComplexMatrix p = generate(spec);
      CHECK(op_norm(p) == doctest::Approx(0.9).epsilon(1e-12));
      CHECK(classify(p, {}).pure_contraction);

      spec.kind = OperatorKind::self_adjoint_contraction;
      ComplexMatrix h = generate(spec);
      CHECK(dist(h, h.adjoint()) == 0.0);
      CHECK(op_norm(h) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("symmetry example") {
  ClassSpec spec;
  spec.kind = OperatorKind::symmetry;
  spec.dim = 4;
  spec.seed = 1;
  ComplexMatrix t = generate(spec);
  CHECK(dist(t, t.adjoint()) < 1e-12);
  CHECK(dist(t * t, ComplexMatrix::Identity(4, 4)) < 1e-12);
}

TEST_CASE("partial isometry example") {
  ClassSpec spec;
  spec.kind = OperatorKind::partial_isometry;
  spec.dim = 3;
  spec.rank = 2;
  spec.seed = 7;
  ComplexMatrix t = generate(spec);
  ComplexMatrix g = t.adjoint() * t;
  CHECK(dist(g * g, g) < 1e-12);
  CHECK(range_closure(t, {}, 1.0).rank() == 2);

  spec.rank = 0;
  CHECK(generate(spec).norm() == 0.0);
  spec.rank = 3;
  ComplexMatrix w = generate(spec);
  CHECK(dist(w.adjoint() * w, ComplexMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("nilpotent example") {
  ClassSpec spec;
  spec.kind = OperatorKind::nilpotent;
  spec.dim = 4;
  spec.order = 3;
  spec.seed = 2;
  ComplexMatrix t = generate(spec);
  ComplexMatrix t2 = t * t;
  CHECK((t2 * t).norm() < 1e-12 * std::pow(t.norm(), 3));
  CHECK(t2.norm() > 1e-6);
  CHECK(classify(t, {}).nilpotent_order == 3);

  spec.order = 1;
  CHECK(generate(spec).norm() == 0.0);
  spec.order = 4;
  ComplexMatrix full = generate(spec);
  CHECK(classify(full, {}).nilpotent_order == 4);
}

TEST_CASE("quasi-isometry family") {
  for (int m : {1, 2, 3}) {
    for (Index n : {2, 4, 7}) {
      ClassSpec spec;
      spec.kind = OperatorKind::m_quasi_isometry;
      spec.dim = n;
      spec.seed = 11 * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(n);
      spec.m = m;

      ComplexMatrix t = generate(spec);
      ClassMembership cls = classify(t, {m});
      CHECK(cls.quasi_isometry.at(m));
      CHECK(cls.contraction);
      CHECK(cls.quasi_isometry_residual.at(m) < 1e-9);

      spec.contractive = false;
      ComplexMatrix w = generate(spec);
      ClassMembership wcls = classify(w, {m});
      CHECK(wcls.quasi_isometry.at(m));
      CHECK(!wcls.contraction);
    }
  }
}

TEST_CASE("quasi-isometry order is genuine for m >= 2") {
  ClassSpec spec;
  spec.kind = OperatorKind::m_quasi_isometry;
  spec.dim = 6;
  spec.seed = 5;
  spec.m = 3;
  ComplexMatrix t = generate(spec);
  ClassMembership cls = classify(t, {2, 3});
  CHECK(cls.quasi_isometry.at(3));
  CHECK(!cls.quasi_isometry.at(2));
}

TEST_CASE("hermitian plus perturbation stays near self-adjoint") {
  ClassSpec spec;
  spec.kind = OperatorKind::hermitian_plus_perturbation;
  spec.dim = 5;
  spec.seed = 3;
  spec.epsilon = 1e-3;
  ComplexMatrix t = generate(spec);
  double asym = (t - t.adjoint()).norm();
  CHECK(asym > 0.0);
  CHECK(asym <= 2e-3);

  spec.epsilon = 0.0;
  ComplexMatrix h = generate(spec);
  CHECK(dist(h, h.adjoint()) == 0.0);
}

TEST_CASE("perturb moves exactly epsilon in Frobenius norm") {
  ComplexMatrix t = gaussian_matrix(9, 4, 4);
  for (double eps : {1e-1, 1e-4, 1e-9}) {
    ComplexMatrix p = perturb(t, eps, 17);
    // Absolute error rides on ||t|| through the cancellation in p - t.
    CHECK(std::abs((p - t).norm() - eps) < 1e-12 * (eps + t.norm()));
  }
  CHECK(bitwise_equal(perturb(t, 0.0, 17), t));
  CHECK(bitwise_equal(perturb(t, 1e-3, 17), perturb(t, 1e-3, 17)));
  CHECK(!bitwise_equal(perturb(t, 1e-3, 17), perturb(t, 1e-3, 18)));
}

TEST_CASE("perturbed symmetry keeps a small modulus-order defect") {
  ClassSpec spec;
  spec.kind = OperatorKind::symmetry;
  spec.dim = 5;
  spec.seed = 21;
  ComplexMatrix j = generate(spec);
  double eps = 1e-3;
  ComplexMatrix t = perturb(j, eps, 4);
  ConditionReport rep = fong_tsui_check(t);
  CHECK(std::abs(rep.fong_tsui_defect) <= 10.0 * eps);
}

TEST_CASE("block shift pair identities are exact") {
  for (Index h : {1, 2, 3, 4}) {
    auto [t, u] = block_shift_pair(h);
    const Index n = 2 * h;
    ComplexMatrix top = ComplexMatrix::Zero(n, n);
    top.topLeftCorner(h, h).setIdentity();
    ComplexMatrix bottom = ComplexMatrix::Zero(n, n);
    bottom.bottomRightCorner(h, h).setIdentity();

    CHECK(dist(t * u, top) == 0.0);
    CHECK(dist(u * t, bottom) == 0.0);
    CHECK(dist(u, u.adjoint()) == 0.0);
    CHECK(dist(u * u, ComplexMatrix::Identity(n, n)) == 0.0);
    CHECK((t * t).norm() == 0.0);
    ClassMembership cls = classify(t, {});
    CHECK(cls.partial_isometry);
    CHECK(classify(u, {}).symmetry);
  }

  auto [t, u] = block_shift_pair(1);
  CHECK(dist(t, testutil::mat({{0, 1}, {0, 0}})) == 0.0);
  CHECK(dist(u, testutil::mat({{0, 1}, {1, 0}})) == 0.0);
}

TEST_CASE("invalid specs are rejected") {
  ClassSpec spec;
  spec.kind = OperatorKind::partial_isometry;
  spec.dim = 3;
  spec.rank = 4;
  CHECK_THROWS_AS(generate(spec), DimensionMismatch);

  spec = {};
  spec.kind = OperatorKind::nilpotent;
  spec.dim = 3;
  spec.order = 0;
  CHECK_THROWS_AS(generate(spec), DimensionMismatch);
  spec.order = 4;
  CHECK_THROWS_AS(generate(spec), DimensionMismatch);

  spec = {};
  spec.kind = OperatorKind::m_quasi_isometry;
  spec.dim = 1;
  spec.contractive = false;
  CHECK_THROWS_AS(generate(spec), GenerationFailed);

  spec = {};
  spec.dim = 0;
  CHECK_THROWS_AS(generate(spec), DimensionMismatch);

  CHECK_THROWS_AS(parse_kind("shift"), ParseError);
}

TEST_CASE("kind names round-trip") {
  for (OperatorKind kind :
       {OperatorKind::unitary, OperatorKind::symmetry,
        OperatorKind::contraction, OperatorKind::pure_contraction,
        OperatorKind::partial_isometry, OperatorKind::nilpotent,
        OperatorKind::m_quasi_isometry,
        OperatorKind::self_adjoint_contraction,
        OperatorKind::hermitian_plus_perturbation}) {
    CHECK(parse_kind(kind_name(kind)) == kind);
  }
}
