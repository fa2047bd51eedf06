#include "ftk/generators.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "ftk/errors.hpp"
#include "ftk/operator_props.hpp"
#include "ftk/rng.hpp"
#include "ftk/subspace.hpp"

namespace ftk {
namespace {

// Stream keys for the independent pieces of one construction attempt.
constexpr std::uint64_t kLeft = 0x4c;
constexpr std::uint64_t kRight = 0x52;
constexpr std::uint64_t kOuter = 0x4f;
constexpr std::uint64_t kScalars = 0x53;
constexpr std::uint64_t kEntries = 0x45;
constexpr std::uint64_t kBump = 0x42;

constexpr int kMaxAttempts = 100;

Complex random_phase(SplitMix64& rng, double magnitude) {
  double ang = 2.0 * std::numbers::pi * rng.uniform();
  return Complex(magnitude * std::cos(ang), magnitude * std::sin(ang));
}

// Strictly upper chain on the first superdiagonal, broken every `order`
// columns so the longest run has order - 1 links: index exactly `order`.
ComplexMatrix chain_nilpotent(std::uint64_t seed, Index n, int order) {
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  SplitMix64 rng(seed);
  for (Index j = 1; j < n; ++j) {
    double mag = 0.5 + rng.uniform();
    if (j % order != 0) a(j - 1, j) = random_phase(rng, mag);
  }
  return a;
}

ComplexMatrix scaled_contraction(std::uint64_t seed, Index n, double target) {
  ComplexMatrix g = gaussian_matrix(seed, n, n);
  double norm = op_norm(g);
  if (norm == 0.0) return g;
  return (target / norm) * g;
}

ComplexMatrix build(const ClassSpec& spec, std::uint64_t s) {
  const Index n = spec.dim;
  switch (spec.kind) {
    case OperatorKind::unitary:
      return random_unitary(s, n);
    case OperatorKind::symmetry: {
      ComplexMatrix u = random_unitary(mix_seed(s, kLeft), n);
      SplitMix64 rng(mix_seed(s, kScalars));
      RealVector d(n);
      for (Index i = 0; i < n; ++i) d[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
      return hermitize(u * d.asDiagonal() * u.adjoint());
    }
    case OperatorKind::contraction:
      return scaled_contraction(mix_seed(s, kEntries), n, 1.0);
    case OperatorKind::pure_contraction:
      return scaled_contraction(mix_seed(s, kEntries), n, 0.9);
    case OperatorKind::partial_isometry: {
      const Index r = spec.rank < 0 ? n / 2 : spec.rank;
      ComplexMatrix u = random_unitary(mix_seed(s, kLeft), n);
      ComplexMatrix v = random_unitary(mix_seed(s, kRight), n);
      RealVector d = RealVector::Zero(n);
      d.head(r).setOnes();
      return u * d.asDiagonal() * v.adjoint();
    }
    case OperatorKind::nilpotent: {
      ComplexMatrix a = chain_nilpotent(mix_seed(s, kEntries), n, spec.order);
      ComplexMatrix u = random_unitary(mix_seed(s, kOuter), n);
      return u * a * u.adjoint();
    }
    case OperatorKind::m_quasi_isometry: {
      const Index q = std::min<Index>(spec.m, n - 1);
      const Index k = n - q;
      ComplexMatrix t = ComplexMatrix::Zero(n, n);
      t.topLeftCorner(k, k) = random_unitary(mix_seed(s, kLeft), k);
      if (q > 0) {
        int index = static_cast<int>(std::min<Index>(spec.m, q));
        ComplexMatrix nil = chain_nilpotent(mix_seed(s, kEntries), q, index);
        double norm = op_norm(nil);
        if (norm > 0.0) nil *= 0.9 / norm;
        t.bottomRightCorner(q, q) = nil;
        if (!spec.contractive)
          t.topRightCorner(k, q) = gaussian_matrix(mix_seed(s, kRight), k, q);
      }
      ComplexMatrix u = random_unitary(mix_seed(s, kOuter), n);
      return u * t * u.adjoint();
    }
    case OperatorKind::self_adjoint_contraction: {
      ComplexMatrix u = random_unitary(mix_seed(s, kLeft), n);
      SplitMix64 rng(mix_seed(s, kScalars));
      RealVector d(n);
      // Atoms at -1, 0, 1 keep unit eigenspaces and kernels common in the
      // corpus instead of measure-zero.
      for (Index i = 0; i < n; ++i) {
        double pick = rng.uniform();
        if (pick < 0.15) d[i] = 1.0;
        else if (pick < 0.30) d[i] = -1.0;
        else if (pick < 0.45) d[i] = 0.0;
        else d[i] = 2.0 * rng.uniform() - 1.0;
      }
      return hermitize(u * d.asDiagonal() * u.adjoint());
    }
    case OperatorKind::hermitian_plus_perturbation: {
      ComplexMatrix h = hermitian_gaussian(mix_seed(s, kEntries), n);
      double norm = op_norm(h);
      if (norm > 0.0) h /= norm;
      return perturb(h, spec.epsilon, mix_seed(s, kBump));
    }
  }
  throw GenerationFailed("generate: unhandled operator kind");
}

bool satisfies(const ClassSpec& spec, const ComplexMatrix& t,
               const Tolerances& tol) {
  if (!t.allFinite()) return false;
  if (spec.kind == OperatorKind::hermitian_plus_perturbation) return true;
  if (spec.kind == OperatorKind::m_quasi_isometry) {
    ClassMembership cls = classify(t, {spec.m}, tol);
    return cls.quasi_isometry.at(spec.m) &&
           (!spec.contractive || cls.contraction);
  }
  ClassMembership cls = classify(t, {}, tol);
  switch (spec.kind) {
    case OperatorKind::unitary:
      return cls.unitary;
    case OperatorKind::symmetry:
      return cls.symmetry;
    case OperatorKind::contraction:
      return cls.contraction;
    case OperatorKind::pure_contraction:
      return cls.pure_contraction;
    case OperatorKind::partial_isometry: {
      const Index r = spec.rank < 0 ? spec.dim / 2 : spec.rank;
      return cls.partial_isometry &&
             range_closure(t, tol, 1.0).rank() == r;
    }
    case OperatorKind::nilpotent:
      return cls.nilpotent_order == spec.order;
    case OperatorKind::self_adjoint_contraction:
      return cls.self_adjoint && cls.contraction;
    default:
      return false;
  }
}

void validate(const ClassSpec& spec) {
  if (spec.dim < 1)
    throw DimensionMismatch("generate: dim must be positive");
  switch (spec.kind) {
    case OperatorKind::partial_isometry:
      if (spec.rank > spec.dim)
        throw DimensionMismatch("generate: partial isometry rank exceeds dim");
      break;
    case OperatorKind::nilpotent:
      if (spec.order < 1 || spec.order > spec.dim)
        throw DimensionMismatch("generate: nilpotent order must lie in [1, dim]");
      break;
    case OperatorKind::m_quasi_isometry:
      if (spec.m < 1)
        throw DimensionMismatch("generate: quasi-isometry order must be positive");
      if (!spec.contractive && spec.dim < 2)
        throw GenerationFailed(
            "generate: every 1x1 quasi-isometry is a contraction");
      break;
    case OperatorKind::hermitian_plus_perturbation:
      if (!(spec.epsilon >= 0.0))
        throw GenerationFailed("generate: epsilon must be nonnegative");
      break;
    default:
      break;
  }
}

} // namespace

const char* kind_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::unitary: return "unitary";
    case OperatorKind::symmetry: return "symmetry";
    case OperatorKind::contraction: return "contraction";
    case OperatorKind::pure_contraction: return "pure_contraction";
    case OperatorKind::partial_isometry: return "partial_isometry";
    case OperatorKind::nilpotent: return "nilpotent";
    case OperatorKind::m_quasi_isometry: return "m_quasi_isometry";
    case OperatorKind::self_adjoint_contraction:
      return "self_adjoint_contraction";
    case OperatorKind::hermitian_plus_perturbation:
      return "hermitian_plus_perturbation";
  }
  return "unknown";
}

OperatorKind parse_kind(const std::string& name) {
  static constexpr OperatorKind kAll[] = {
      OperatorKind::unitary,
      OperatorKind::symmetry,
      OperatorKind::contraction,
      OperatorKind::pure_contraction,
      OperatorKind::partial_isometry,
      OperatorKind::nilpotent,
      OperatorKind::m_quasi_isometry,
      OperatorKind::self_adjoint_contraction,
      OperatorKind::hermitian_plus_perturbation,
  };
  for (OperatorKind kind : kAll)
    if (name == kind_name(kind)) return kind;
  throw ParseError("unknown operator class: " + name);
}

ComplexMatrix random_unitary(std::uint64_t seed, Index n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(seed, n, n));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

ComplexMatrix generate(const ClassSpec& spec, const Tolerances& tol) {
  validate(spec);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::uint64_t s = mix_seed(spec.seed, static_cast<std::uint64_t>(attempt));
    ComplexMatrix t = build(spec, s);
    if (satisfies(spec, t, tol)) return t;
  }
  throw GenerationFailed(std::string(kind_name(spec.kind)) +
                         ": no admissible sample after 100 attempts");
}

ComplexMatrix perturb(const ComplexMatrix& t, double epsilon,
                      std::uint64_t seed) {
  if (epsilon == 0.0) return t;
  ComplexMatrix g = gaussian_matrix(seed, t.rows(), t.cols());
  double norm = g.norm();
  if (norm == 0.0) return t;
  return t + (epsilon / norm) * g;
}

std::pair<ComplexMatrix, ComplexMatrix> block_shift_pair(Index half_dim) {
  if (half_dim < 1)
    throw DimensionMismatch("block_shift_pair: half_dim must be positive");
  const Index n = 2 * half_dim;
  ComplexMatrix t = ComplexMatrix::Zero(n, n);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  t.topRightCorner(half_dim, half_dim).setIdentity();
  u.topRightCorner(half_dim, half_dim).setIdentity();
  u.bottomLeftCorner(half_dim, half_dim).setIdentity();
  return {t, u};
}

} // namespace ftk
