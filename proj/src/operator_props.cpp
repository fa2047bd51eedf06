#include "ftk/operator_props.hpp"

#include <algorithm>
#include <cmath>

#include "ftk/errors.hpp"

namespace ftk {

namespace {

void require_square(const ComplexMatrix& t, const char* where) {
  if (t.rows() != t.cols())
    throw DimensionMismatch(std::string(where) + ": operator must be square");
}

ComplexMatrix hermitian_abs(const ComplexMatrix& h, const Tolerances& tol) {
  HermitianEigen eig = hermitian_eig(h, tol);
  RealVector mags = eig.eigenvalues.cwiseAbs();
  return hermitize(eig.eigenvectors * mags.asDiagonal() *
                   eig.eigenvectors.adjoint());
}

} // namespace

OperatorFunctions operator_functions(const ComplexMatrix& t,
                                     const Tolerances& tol) {
  require_square(t, "operator_functions");
  OperatorFunctions f;
  // |T| from the singular values of T itself: forming T*T first would turn
  // eps-level noise into sqrt(eps) errors on the kernel directions.
  Svd s = svd(t);
  f.modulus =
      hermitize(s.v * s.singular_values.asDiagonal() * s.v.adjoint());
  f.real_part = hermitize(t);
  f.abs_real_part = hermitian_abs(f.real_part, tol);
  f.norm = op_norm(t);
  return f;
}

PolarRealPart polar_real_part(const ComplexMatrix& t, const Tolerances& tol) {
  require_square(t, "polar_real_part");
  const Index n = t.rows();
  ComplexMatrix re = hermitize(t);
  HermitianEigen eig = hermitian_eig(re, tol);

  double lam_max = 0.0;
  for (Index i = 0; i < n; ++i)
    lam_max = std::max(lam_max, std::abs(eig.eigenvalues(i)));
  const double cutoff = rank_cutoff(lam_max, n, n, tol);

  RealVector signs(n), mags(n);
  for (Index i = 0; i < n; ++i) {
    const double lam = eig.eigenvalues(i);
    signs(i) = std::abs(lam) <= cutoff ? 0.0 : (lam > 0 ? 1.0 : -1.0);
    mags(i) = std::abs(lam);
  }

  PolarRealPart p;
  p.u_tilde = hermitize(eig.eigenvectors * signs.asDiagonal() *
                        eig.eigenvectors.adjoint());
  p.abs_real_part = hermitize(eig.eigenvectors * mags.asDiagonal() *
                              eig.eigenvectors.adjoint());
  p.factor_residual = (p.u_tilde * p.abs_real_part - re).norm();

  Subspace lhs = kernel(ComplexMatrix::Identity(n, n) - p.abs_real_part, tol,
                        1.0);
  Subspace rhs = intersect(kernel(p.u_tilde - re, tol, 1.0),
                           range_closure(re, tol), tol);
  p.unit_kernel_identity = subspace_equal(lhs, rhs, tol);
  return p;
}

ConditionReport fong_tsui_check(const ComplexMatrix& t, const Tolerances& tol) {
  require_square(t, "fong_tsui_check");
  OperatorFunctions f = operator_functions(t, tol);

  ConditionReport r;
  LoewnerResult ft = loewner_leq(f.modulus, f.abs_real_part, tol);
  r.fong_tsui = ft.holds;
  r.fong_tsui_defect = ft.defect;

  LoewnerResult fi = loewner_leq(hermitize(t.adjoint() * t),
                                 hermitize(f.real_part * f.real_part), tol);
  r.fong_istratescu = fi.holds;
  r.fong_istratescu_defect = fi.defect;

  const double tn = t.norm();
  const double asym = (t - t.adjoint()).norm();
  r.asymmetry = tn > 0 ? asym / tn : 0.0;
  r.self_adjoint = asym <= tol.eq * tn;

  PolarRealPart polar = polar_real_part(t, tol);
  r.mortad_defect = (t * polar.u_tilde - polar.u_tilde * t).norm();
  r.mortad_commutes = r.mortad_defect <= tol.eq * tn;
  return r;
}

ClassMembership classify(const ComplexMatrix& t,
                         const std::vector<int>& quasi_orders,
                         const Tolerances& tol) {
  require_square(t, "classify");
  const Index n = t.rows();
  ClassMembership c;

  const double norm = op_norm(t);
  c.contraction_excess = norm - 1.0;
  c.contraction = norm <= 1.0 + tol.psd;

  ComplexMatrix tt = t.adjoint() * t;
  const double tt_norm = op_norm(tt);
  ComplexMatrix id = ComplexMatrix::Identity(n, n);

  c.isometry_residual = (tt - id).norm();
  c.isometry = c.isometry_residual <= tol.eq * std::max(1.0, tt_norm);
  c.unitary_residual = std::max(c.isometry_residual,
                                (t * t.adjoint() - id).norm());
  c.unitary = c.unitary_residual <= tol.eq * std::max(1.0, tt_norm);

  c.self_adjoint_residual = (t - t.adjoint()).norm();
  c.self_adjoint = c.self_adjoint_residual <= tol.eq * t.norm();
  c.symmetry = c.unitary && c.self_adjoint;

  c.partial_isometry_residual = (tt * tt - tt).norm();
  c.partial_isometry = c.partial_isometry_residual <=
                       tol.eq * std::max(1.0, tt_norm * tt_norm);

  c.pure_contraction =
      c.contraction &&
      kernel(id - tt, tol, std::max(1.0, tt_norm)).rank() == 0;

  LoewnerResult hypo = loewner_leq(hermitize(t * t.adjoint()), hermitize(tt),
                                   tol);
  c.hyponormal = hypo.holds;
  c.hyponormal_defect = hypo.defect;

  // Nilpotency is only probed up to the dimension; index n suffices in C^n.
  ComplexMatrix power = t;
  for (Index k = 1; k <= n; ++k) {
    if (op_norm(power) <= tol.eq * std::pow(norm, static_cast<double>(k))) {
      c.nilpotent_order = static_cast<int>(k);
      break;
    }
    if (k < n) power = power * t;
  }

  for (int m : quasi_orders) {
    ComplexMatrix tm = ComplexMatrix::Identity(n, n);
    for (int k = 0; k < m; ++k) tm = tm * t;
    ComplexMatrix tm1 = tm * t;
    const double res = (tm1.adjoint() * tm1 - tm.adjoint() * tm).norm();
    const double scale =
        std::max(1.0, std::pow(norm, 2.0 * static_cast<double>(m + 1)));
    c.quasi_isometry_residual[m] = res;
    c.quasi_isometry[m] = res <= tol.eq * scale;
  }

  ComplexMatrix t2 = t * t;
  c.two_isometry_residual =
      (t2.adjoint() * t2 - 2.0 * tt + id).norm();
  c.two_isometry = c.two_isometry_residual <=
                   tol.eq * std::max(1.0, norm * norm * norm * norm);

  // Enforced implications: the flags form a lattice whatever the residual
  // thresholds said individually.
  if (c.partial_isometry && kernel(t, tol).rank() == 0) c.isometry = true;
  if (c.symmetry) c.unitary = true;
  if (c.unitary) c.isometry = true;
  if (c.isometry) {
    c.contraction = true;
    c.partial_isometry = true;
  }
  return c;
}

TwoIsometryStructure two_isometry_structure(const ComplexMatrix& t,
                                            const Tolerances& tol) {
  require_square(t, "two_isometry_structure");
  ClassMembership c = classify(t, {}, tol);
  if (!c.two_isometry)
    throw NotTwoIsometry("two_isometry_structure: residual " +
                         std::to_string(c.two_isometry_residual));

  const Index n = t.rows();
  ComplexMatrix d = hermitize(t.adjoint() * t -
                              ComplexMatrix::Identity(n, n));
  const double anchor = std::max(1.0, op_norm(t.adjoint() * t));

  TwoIsometryStructure s;
  s.unit_part = kernel(d, tol, anchor);
  s.defect_part = complement(s.unit_part, tol);

  s.s = compress(t, s.unit_part, s.unit_part);
  s.r = compress(t, s.defect_part, s.unit_part);
  s.q = compress(t, s.defect_part, s.defect_part);
  s.triangular_residual = compress(t, s.unit_part, s.defect_part).norm();

  const Index k = s.unit_part.rank();
  s.isometry_residual =
      (s.s.adjoint() * s.s - ComplexMatrix::Identity(k, k)).norm();
  s.s_star_r_residual = (s.s.adjoint() * s.r).norm();

  const Index m = s.defect_part.rank();
  ComplexMatrix cov = s.r.adjoint() * s.r + s.q.adjoint() * s.q -
                      ComplexMatrix::Identity(m, m);
  s.covariance_identity_residual =
      (s.q.adjoint() * cov * s.q - cov).norm();
  s.covariance_injective = kernel(cov, tol, 1.0).rank() == 0;
  return s;
}

BrownianOutcome brownian_decompose(const ComplexMatrix& t,
                                   const Tolerances& tol) {
  require_square(t, "brownian_decompose");
  BrownianOutcome out;

  ClassMembership c = classify(t, {}, tol);
  if (!c.two_isometry) {
    out.status = BrownianStatus::not_two_isometry;
    out.detail = "two-isometry residual " +
                 std::to_string(c.two_isometry_residual);
    return out;
  }

  const Index n = t.rows();
  ComplexMatrix tt = t.adjoint() * t;
  ComplexMatrix d = hermitize(tt - ComplexMatrix::Identity(n, n));
  const double anchor = std::max(1.0, op_norm(tt));
  const double sigma_sq = op_norm(d);
  if (sigma_sq <= tol.psd * anchor) {
    out.status = BrownianStatus::sigma_zero;
    out.detail = "covariance vanishes; the operator is unitary";
    return out;
  }

  BrownianDecomposition dec;
  dec.sigma = std::sqrt(sigma_sq);
  dec.unit_part = kernel(d, tol, anchor);
  dec.defect_part = complement(dec.unit_part, tol);

  auto mismatch = [&](const std::string& what) {
    out.status = BrownianStatus::structure_mismatch;
    out.detail = what;
    return out;
  };

  const double tscale = std::max(1.0, op_norm(t));
  if (compress(t, dec.unit_part, dec.defect_part).norm() > tol.eq * tscale)
    return mismatch("unit part is not invariant");

  dec.v = compress(t, dec.unit_part, dec.unit_part);
  ComplexMatrix scaled_e = compress(t, dec.defect_part, dec.unit_part);
  dec.u = compress(t, dec.defect_part, dec.defect_part);
  dec.e = scaled_e / dec.sigma;

  const Index k = dec.unit_part.rank();
  const Index m = dec.defect_part.rank();
  if ((dec.v.adjoint() * dec.v - ComplexMatrix::Identity(k, k)).norm() >
      tol.eq * std::max(1.0, static_cast<double>(k)))
    return mismatch("diagonal block on the unit part is not an isometry");
  if ((dec.u.adjoint() * dec.u - ComplexMatrix::Identity(m, m)).norm() >
          tol.eq * std::max(1.0, static_cast<double>(m)) ||
      (dec.u * dec.u.adjoint() - ComplexMatrix::Identity(m, m)).norm() >
          tol.eq * std::max(1.0, static_cast<double>(m)))
    return mismatch("diagonal block on the defect part is not unitary");
  if (kernel(dec.e, tol).rank() != 0)
    return mismatch("covariance factor is not injective");
  if (op_norm(dec.e) > 1.0 + tol.psd)
    return mismatch("covariance factor is not a contraction");
  if (containment_defect(kernel(dec.v.adjoint(), tol), range_closure(dec.e, tol)) >
      tol.eq)
    return mismatch("covariance factor does not map into the co-kernel of V");
  ComplexMatrix ee = dec.e.adjoint() * dec.e;
  if ((dec.u * ee - ee * dec.u).norm() > tol.eq)
    return mismatch("covariance does not commute with the unitary part");

  out.status = BrownianStatus::ok;
  out.decomposition = std::move(dec);
  return out;
}

DouglasFactor douglas_factor(const ComplexMatrix& t, const Tolerances& tol) {
  require_square(t, "douglas_factor");
  // Half powers straight from the decompositions of T and Re T; re-squaring
  // through psd_sqrt would blur exact kernels into sqrt(eps) directions. The
  // same amplification hides in the half power itself (sqrt of eps-level
  // noise), so values under the rank cutoff are flushed to exact zeros.
  Svd s = svd(t);
  const Index n = t.rows();
  const double sig_max = s.singular_values.size() > 0 ? s.singular_values[0] : 0.0;
  const double cut = rank_cutoff(sig_max, n, n, tol, 1.0);
  RealVector root_sig = s.singular_values;
  for (Index i = 0; i < root_sig.size(); ++i)
    root_sig[i] = root_sig[i] > cut ? std::sqrt(root_sig[i]) : 0.0;
  ComplexMatrix sq_mod =
      hermitize(s.v * root_sig.asDiagonal() * s.v.adjoint());
  HermitianEigen eig = hermitian_eig(hermitize(t), tol);
  RealVector root_abs = eig.eigenvalues.array().abs();
  for (Index i = 0; i < root_abs.size(); ++i)
    root_abs[i] = root_abs[i] > cut ? std::sqrt(root_abs[i]) : 0.0;
  ComplexMatrix sq_re = hermitize(eig.eigenvectors * root_abs.asDiagonal() *
                                  eig.eigenvectors.adjoint());

  DouglasFactor d;
  d.a = sq_mod * pinv(sq_re, tol);
  d.norm = op_norm(d.a);
  d.residual = (d.a * sq_re - sq_mod).norm();
  return d;
}

} // namespace ftk
