#include "ftk/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ftk/errors.hpp"

namespace ftk {

namespace {

void require_square(const ComplexMatrix& t, const char* where) {
  if (t.rows() != t.cols())
    throw DimensionMismatch(std::string(where) + ": operator must be square");
}

void require_contraction(const ComplexMatrix& t, const Tolerances& tol,
                         const char* where) {
  const double norm = op_norm(t);
  if (norm > 1.0 + tol.psd)
    throw NotContraction(std::string(where) + ": ||T|| = " +
                         std::to_string(norm));
}

ComplexMatrix matrix_power(const ComplexMatrix& t, int m) {
  ComplexMatrix p = ComplexMatrix::Identity(t.rows(), t.cols());
  for (int k = 0; k < m; ++k) p = p * t;
  return p;
}

double idempotency_residual(const ComplexMatrix& x) {
  ComplexMatrix g = x.adjoint() * x;
  return (g * g - g).norm();
}

bool is_partial_isometry_block(const ComplexMatrix& x, const Tolerances& tol) {
  const double norm = op_norm(x);
  return idempotency_residual(x) <=
         tol.eq * std::max(1.0, norm * norm * norm * norm);
}

// Frobenius mass of every block outside the allowed (row, col) pattern.
double pattern_residual(const BlockDecomposition& dec,
                        std::initializer_list<std::pair<Index, Index>> allowed) {
  double sq = 0.0;
  const Index k = static_cast<Index>(dec.parts.size());
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      bool ok = false;
      for (const auto& [ai, aj] : allowed)
        if (ai == i && aj == j) ok = true;
      if (!ok) sq += dec.blocks[i][j].squaredNorm();
    }
  }
  return std::sqrt(sq);
}

} // namespace

ComplexMatrix BlockDecomposition::concatenated_basis() const {
  Index total = 0;
  for (const auto& p : parts) total += p.rank();
  ComplexMatrix b(ambient, total);
  Index at = 0;
  for (const auto& p : parts) {
    b.middleCols(at, p.rank()) = p.basis;
    at += p.rank();
  }
  return b;
}

ComplexMatrix BlockDecomposition::assemble() const {
  Index total = 0;
  for (const auto& p : parts) total += p.rank();
  ComplexMatrix a = ComplexMatrix::Zero(total, total);
  Index row = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Index col = 0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      a.block(row, col, parts[i].rank(), parts[j].rank()) = blocks[i][j];
      col += parts[j].rank();
    }
    row += parts[i].rank();
  }
  return a;
}

double BlockDecomposition::reassembly_residual(const ComplexMatrix& t) const {
  ComplexMatrix b = concatenated_basis();
  return (b * assemble() * b.adjoint() - t).norm();
}

BlockDecomposition make_blocks(const ComplexMatrix& t,
                               std::vector<Subspace> parts,
                               std::vector<std::string> labels) {
  BlockDecomposition dec;
  dec.ambient = t.rows();
  dec.parts = std::move(parts);
  dec.labels = std::move(labels);
  dec.blocks.resize(dec.parts.size());
  for (std::size_t i = 0; i < dec.parts.size(); ++i) {
    dec.blocks[i].resize(dec.parts.size());
    for (std::size_t j = 0; j < dec.parts.size(); ++j)
      dec.blocks[i][j] = compress(t, dec.parts[j], dec.parts[i]);
  }
  return dec;
}

Subspace lift(const Subspace& part, const Subspace& inner) {
  if (inner.ambient != part.rank())
    throw DimensionMismatch("lift: inner subspace does not live in the part");
  return {part.ambient, part.basis * inner.basis};
}

AsymptoticLimit asymptotic_limit(const ComplexMatrix& t,
                                 const Tolerances& tol) {
  require_square(t, "asymptotic_limit");
  require_contraction(t, tol, "asymptotic_limit");
  const Index n = t.rows();

  AsymptoticLimit out;
  ComplexMatrix a = ComplexMatrix::Identity(n, n);
  const double stop = tol.conv * static_cast<double>(std::max<Index>(n, 1));
  bool converged = false;
  for (int k = 1; k <= tol.max_iter; ++k) {
    ComplexMatrix next = hermitize(t.adjoint() * a * t);
    out.final_step = (next - a).norm();
    a = std::move(next);
    out.iterations = k;
    if (out.final_step <= stop) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergence("asymptotic_limit: step " +
                        std::to_string(out.final_step) + " after " +
                        std::to_string(tol.max_iter) + " iterations");
  out.s = a;
  out.max_isometric = kernel(ComplexMatrix::Identity(n, n) - a, tol, 1.0);
  return out;
}

MaxPartialIsometricResult max_partial_isometric_subspace(
    const ComplexMatrix& t, const Tolerances& tol) {
  require_square(t, "max_partial_isometric_subspace");
  require_contraction(t, tol, "max_partial_isometric_subspace");
  const Index n = t.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix tt = hermitize(t.adjoint() * t);

  MaxPartialIsometricResult out;
  out.kernel_part = kernel(t, tol);
  out.unit_kernel = kernel(id - tt, tol, 1.0);

  // H' carries the part of the spectrum of T*T strictly between 0 and 1.
  // H1 is the largest subspace of N(I - T*T) whose whole forward orbit under
  // the compression T1 is killed by T2; the one-step kernel N(T2) alone is
  // not invariant (a length-3 isometric chain feeding a contractive
  // direction already escapes it).
  Subspace hprime = range_closure(hermitize(tt - tt * tt), tol, 1.0);
  ComplexMatrix t1 = compress(t, out.unit_kernel, out.unit_kernel);
  ComplexMatrix t2 = compress(t, out.unit_kernel, hprime);
  const Index k = out.unit_kernel.rank();
  ComplexMatrix stack(hprime.rank() * std::max<Index>(k, 1), k);
  if (stack.rows() > 0 && k > 0) {
    ComplexMatrix power = ComplexMatrix::Identity(k, k);
    for (Index j = 0; j < k; ++j) {
      stack.middleRows(j * hprime.rank(), hprime.rank()) = t2 * power;
      power = t1 * power;
    }
  }
  out.lifted_kernel = lift(out.unit_kernel, kernel(stack, tol, 1.0));

  out.m = subspace_sum(out.kernel_part, out.lifted_kernel, tol);
  if (out.m.rank() != out.kernel_part.rank() + out.lifted_kernel.rank())
    throw SpanMismatch(
        "max_partial_isometric_subspace: kernel overlaps the unit part");
  Subspace mperp = complement(out.m, tol);

  out.two_block = make_blocks(t, {out.m, mperp}, {"M", "M_perp"});
  const ComplexMatrix& w = out.two_block.block(0, 0);
  const ComplexMatrix& r = out.two_block.block(0, 1);
  const ComplexMatrix& q = out.two_block.block(1, 1);

  out.w_residual = idempotency_residual(w);
  out.w_partial_isometry = out.w_residual <= tol.eq;
  out.w_star_r_residual = (w.adjoint() * r).norm();
  out.invariance_residual = out.two_block.block(1, 0).norm();

  const Index mp = mperp.rank();
  Subspace q_unit =
      kernel(ComplexMatrix::Identity(mp, mp) - q.adjoint() * q, tol, 1.0);
  out.q_unit_kernel = lift(mperp, q_unit);
  out.q_kernel_defect = containment_defect(out.unit_kernel, out.q_unit_kernel);
  out.q_kernel_contained = out.q_kernel_defect <= tol.eq;
  out.q_pure = op_norm(q) <= 1.0 + tol.psd && q_unit.rank() == 0;

  Subspace nsum = subspace_sum(out.kernel_part, out.unit_kernel, tol);
  out.n_sum_defect = invariance_defect(t, nsum);
  out.n_sum_invariant = out.n_sum_defect <= tol.eq * std::max(1.0, t.norm());

  Subspace r_kernel = lift(mperp, kernel(r, tol, 1.0));
  out.split_criterion_defect =
      containment_defect(r_kernel, intersect(out.unit_kernel, mperp, tol));
  out.split_criterion = out.split_criterion_defect <= tol.eq;

  out.three_block = make_blocks(t, {out.kernel_part, out.lifted_kernel, mperp},
                                {"N(T)", "H1", "M_perp"});
  return out;
}

BlockDecomposition three_block_form(const ComplexMatrix& t,
                                    const Tolerances& tol) {
  require_square(t, "three_block_form");
  require_contraction(t, tol, "three_block_form");
  const Index n = t.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix tt = hermitize(t.adjoint() * t);

  Subspace h0 = kernel(t, tol);
  Subspace unit = kernel(id - tt, tol, 1.0);
  Subspace hprime = range_closure(hermitize(tt - tt * tt), tol, 1.0);

  if (h0.rank() + unit.rank() + hprime.rank() != n)
    throw SpanMismatch("three_block_form: parts do not exhaust the space");
  BlockDecomposition dec =
      make_blocks(t, {h0, unit, hprime}, {"N(T)", "N(I-T*T)", "H'"});
  ComplexMatrix b = dec.concatenated_basis();
  if ((b.adjoint() * b - id).norm() > tol.eq * static_cast<double>(n))
    throw SpanMismatch("three_block_form: parts are not orthogonal");
  return dec;
}

KernelStructureReport unit_kernel_structure(const ComplexMatrix& t,
                                            const Tolerances& tol) {
  require_square(t, "unit_kernel_structure");
  require_contraction(t, tol, "unit_kernel_structure");
  const Index n = t.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  KernelStructureReport rep;
  rep.condition = fong_tsui_check(t, tol);
  OperatorFunctions f = operator_functions(t, tol);

  rep.unit_tt = kernel(id - hermitize(t.adjoint() * t), tol, 1.0);
  rep.unit_ttstar = kernel(id - hermitize(t * t.adjoint()), tol, 1.0);
  rep.unit_abs_re = kernel(id - f.abs_real_part, tol, 1.0);
  rep.kernel_distance =
      std::max({projector_distance(rep.unit_tt, rep.unit_ttstar),
                projector_distance(rep.unit_tt, rep.unit_abs_re),
                projector_distance(rep.unit_ttstar, rep.unit_abs_re)});
  rep.kernels_equal = rep.kernel_distance <= tol.eq;

  if (!rep.condition.fong_tsui) return rep;
  rep.structure_computed = true;

  const double scale = std::max(1.0, t.norm());
  Subspace co = complement(rep.unit_tt, tol);
  rep.symmetry_part = compress(t, rep.unit_tt, rep.unit_tt);
  rep.reduction_residual = std::max(compress(t, rep.unit_tt, co).norm(),
                                    compress(t, co, rep.unit_tt).norm());
  rep.symmetry_sa_residual =
      (rep.symmetry_part - rep.symmetry_part.adjoint()).norm();
  const Index k = rep.unit_tt.rank();
  rep.symmetry_sq_residual = (rep.symmetry_part * rep.symmetry_part -
                              ComplexMatrix::Identity(k, k))
                                 .norm();

  Subspace n_t = kernel(t, tol);
  Subspace n_tstar = kernel(t.adjoint(), tol);
  Subspace n_re = kernel(f.real_part, tol);

  rep.re_kernel_distance =
      projector_distance(n_re, intersect(n_t, n_tstar, tol));
  rep.re_kernel_identity = rep.re_kernel_distance <= tol.eq;

  Subspace split = subspace_sum(
      n_re, intersect(n_tstar, range_closure(t.adjoint(), tol), tol), tol);
  rep.adjoint_kernel_distance = projector_distance(n_tstar, split);
  rep.adjoint_kernel_split = rep.adjoint_kernel_distance <= tol.eq;

  rep.kernel_match_distance = projector_distance(n_t, n_re);
  rep.kernels_match = rep.kernel_match_distance <= tol.eq;

  if (rep.kernels_match) {
    DiagonalSplit ds;
    ds.g = rep.unit_tt;
    ds.u = rep.symmetry_part;
    ds.z = compress(t, co, co);
    ds.off_diagonal_residual = rep.reduction_residual;
    ds.u_self_adjoint_residual = rep.symmetry_sa_residual;
    ds.u_involution_residual = rep.symmetry_sq_residual;
    const Index zr = co.rank();
    ds.z_pure_contraction =
        op_norm(ds.z) <= 1.0 + tol.psd &&
        kernel(ComplexMatrix::Identity(zr, zr) - ds.z.adjoint() * ds.z, tol,
               1.0)
                .rank() == 0;
    ds.z_condition_holds = fong_tsui_check(ds.z, tol).fong_tsui;
    rep.diag_split = std::move(ds);
  }

  Subspace rest = complement(subspace_sum(rep.unit_tt, n_t, tol), tol);
  if (rep.unit_tt.rank() + n_t.rank() + rest.rank() != n)
    throw SpanMismatch("unit_kernel_structure: triangular parts overlap");
  rep.triangular = make_blocks(t, {rep.unit_tt, n_t, rest},
                               {"N(I-T*T)", "N(T)", "rest"});
  rep.zero_pattern_residual =
      pattern_residual(rep.triangular, {{0, 0}, {1, 2}, {2, 2}});

  // Everything asserted under the order; a failure is downgraded when the
  // order itself evaporates at a tightened tolerance (borderline input).
  const double thr = tol.eq * scale;
  const bool violated =
      rep.kernel_distance > thr || rep.reduction_residual > thr ||
      rep.symmetry_sa_residual > thr || rep.symmetry_sq_residual > thr ||
      rep.re_kernel_distance > thr || rep.adjoint_kernel_distance > thr ||
      rep.zero_pattern_residual > thr;
  if (violated) {
    ConditionReport strict = fong_tsui_check(t, tol.tightened());
    if (strict.fong_tsui)
      throw TheoremViolation(
          "unit_kernel_structure: structural residual exceeds tolerance "
          "while the modulus order holds (kernel distance " +
          std::to_string(rep.kernel_distance) + ")");
    rep.borderline = true;
  }
  return rep;
}

CanonicalTriangularForm canonical_triangular_form(const ComplexMatrix& t,
                                                  const Tolerances& tol) {
  require_square(t, "canonical_triangular_form");
  CanonicalTriangularForm out;
  out.norm = op_norm(t);
  if (out.norm == 0.0)
    throw ZeroOperator("canonical_triangular_form: zero operator");
  const Index n = t.rows();

  ComplexMatrix t0 = t / out.norm;
  AsymptoticLimit al = asymptotic_limit(t0, tol);
  out.g = al.max_isometric;
  Subspace gperp = complement(out.g, tol);

  out.dec = make_blocks(t, {out.g, gperp}, {"G", "G_perp"});
  const ComplexMatrix& s = out.dec.block(0, 0);
  const ComplexMatrix& r = out.dec.block(0, 1);
  const ComplexMatrix& q = out.dec.block(1, 1);
  out.triangular_residual = out.dec.block(1, 0).norm();

  const Index k = out.g.rank();
  ComplexMatrix s0 = s / out.norm;
  out.isometry_residual =
      (s0.adjoint() * s0 - ComplexMatrix::Identity(k, k)).norm();

  out.r_injective =
      gperp.rank() == 0 ||
      kernel(r, tol, std::max(1.0, out.norm)).rank() == 0;
  out.q_square_residual = (q * q).norm();
  out.q_square_zero =
      out.q_square_residual <= tol.eq * std::max(1.0, out.norm * out.norm);
  out.expansive =
      loewner_leq(ComplexMatrix::Identity(n, n),
                  hermitize(t.adjoint() * t), tol)
          .holds;
  out.q_contraction = op_norm(q) <= 1.0 + tol.psd;

  if (out.norm <= 1.0 + tol.psd) {
    ConditionReport cond = fong_tsui_check(t, tol);
    if (cond.fong_tsui) {
      out.s_star_r_residual = (s.adjoint() * r).norm();
      out.r_partial_isometry = is_partial_isometry_block(r, tol);
    }
  }
  return out;
}

QuasiIsometryStructure quasi_isometry_structure(const ComplexMatrix& t, int m,
                                                const Tolerances& tol) {
  require_square(t, "quasi_isometry_structure");
  if (m < 1)
    throw NotQuasiIsometry("quasi_isometry_structure: order must be >= 1");
  ClassMembership cls = classify(t, {m}, tol);
  if (!cls.quasi_isometry.at(m))
    throw NotQuasiIsometry("quasi_isometry_structure: residual " +
                           std::to_string(cls.quasi_isometry_residual.at(m)));
  if (!cls.contraction)
    throw NotContraction("quasi_isometry_structure: ||T|| = " +
                         std::to_string(1.0 + cls.contraction_excess));

  QuasiIsometryStructure out;
  out.m = m;
  ComplexMatrix tm = matrix_power(t, m);
  out.g = range_closure(tm, tol, 1.0);
  Subspace gperp = complement(out.g, tol);
  out.adjoint_kernel_distance =
      projector_distance(gperp, kernel(tm.adjoint(), tol, 1.0));

  out.dec = make_blocks(t, {out.g, gperp}, {"G", "G_perp"});
  const ComplexMatrix& s = out.dec.block(0, 0);
  const ComplexMatrix& r = out.dec.block(0, 1);
  const ComplexMatrix& q = out.dec.block(1, 1);

  const Index k = out.g.rank();
  out.isometry_residual =
      (s.adjoint() * s - ComplexMatrix::Identity(k, k)).norm();
  out.triangular_residual = out.dec.block(1, 0).norm();
  out.q_power_residual = matrix_power(q, m).norm();

  ConditionReport cond = fong_tsui_check(t, tol);
  out.condition_holds = cond.fong_tsui;
  if (out.condition_holds && m >= 3) {
    ReducedQuasiIsometry red;
    const Index n = t.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    red.unit_kernel_distance = projector_distance(
        out.g, kernel(id - hermitize(t.adjoint() * t), tol, 1.0));
    red.adjoint_unit_distance = projector_distance(
        out.g, kernel(id - hermitize(t * t.adjoint()), tol, 1.0));
    red.s_self_adjoint_residual = (s - s.adjoint()).norm();
    red.s_involution_residual =
        (s * s - ComplexMatrix::Identity(k, k)).norm();
    red.r_norm = r.norm();
    out.reduced = red;
  }
  if (out.condition_holds && m <= 2)
    out.self_adjoint_residual = (t - t.adjoint()).norm();
  return out;
}

TriangularPartialIsometryCheck triangular_partial_isometry_form(
    const ComplexMatrix& t, const Subspace& g, const Tolerances& tol) {
  require_square(t, "triangular_partial_isometry_form");
  if (g.ambient != t.rows())
    throw DimensionMismatch(
        "triangular_partial_isometry_form: subspace dimension mismatch");
  const double inv = invariance_defect(t, g);
  if (inv > tol.eq * std::max(1.0, t.norm()))
    throw NotInvariant("triangular_partial_isometry_form: defect " +
                       std::to_string(inv));

  TriangularPartialIsometryCheck out;
  Subspace gperp = complement(g, tol);
  out.dec = make_blocks(t, {g, gperp}, {"G", "G_perp"});
  const ComplexMatrix& w = out.dec.block(0, 0);
  const ComplexMatrix& wp = out.dec.block(1, 1);

  out.w_partial_isometry = is_partial_isometry_block(w, tol);
  out.w_prime_partial_isometry = is_partial_isometry_block(wp, tol);
  out.form_holds = out.w_partial_isometry && out.w_prime_partial_isometry;

  const double alpha = op_norm(t);
  if (alpha > tol.eq) {
    out.scaled_form_holds = is_partial_isometry_block(w / alpha, tol) &&
                            is_partial_isometry_block(wp / alpha, tol);
  } else {
    out.scaled_form_holds = out.form_holds;
  }

  if (out.form_holds || out.scaled_form_holds) {
    ConditionReport cond = fong_tsui_check(t, tol);
    if (cond.fong_tsui)
      out.self_adjoint_residual = (t - t.adjoint()).norm();
  }
  return out;
}

RefinedDecomposition refined_decomposition(const ComplexMatrix& t,
                                           const Tolerances& tol) {
  require_square(t, "refined_decomposition");
  require_contraction(t, tol, "refined_decomposition");
  ConditionReport cond = fong_tsui_check(t, tol);
  if (!cond.fong_tsui)
    throw ConditionFails("refined_decomposition: modulus order fails, defect " +
                         std::to_string(cond.fong_tsui_defect));

  const Index n = t.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  Subspace h1 = kernel(id - hermitize(t.adjoint() * t), tol, 1.0);
  Subspace h0 = kernel(t, tol);
  Subspace n_re = kernel(hermitize(t), tol);
  Subspace h2 = complement(subspace_sum(h1, h0, tol), tol);

  ComplexMatrix q = compress(t, h2, h2);
  Subspace nq_in = kernel(q.adjoint(), tol, 1.0);
  Subspace rq_in = complement(nq_in, tol);
  Subspace nqstar = lift(h2, nq_in);
  Subspace rq = lift(h2, rq_in);
  Subspace h0prime = complement_within(h0, n_re, tol);

  if (h1.rank() + n_re.rank() + nqstar.rank() + h0prime.rank() + rq.rank() !=
      n)
    throw SpanMismatch("refined_decomposition: parts do not exhaust the space");

  RefinedDecomposition out;
  out.dec = make_blocks(t, {h1, n_re, nqstar, h0prime, rq},
                        {"H1", "N(ReT)", "N(Q*)", "H0'", "R(Q)"});
  out.r00 = out.dec.block(3, 2);
  out.r01 = out.dec.block(3, 4);
  out.q0 = out.dec.block(4, 2);
  out.q1 = out.dec.block(4, 4);
  out.zero_pattern_residual = pattern_residual(
      out.dec, {{0, 0}, {3, 2}, {3, 4}, {4, 2}, {4, 4}});

  BlockDecomposition adj = make_blocks(
      t.adjoint(), {h1, n_re, nqstar, h0prime, rq},
      {"H1", "N(ReT)", "N(Q*)", "H0'", "R(Q)"});
  out.adjoint_zero_pattern_residual = pattern_residual(
      adj, {{0, 0}, {2, 3}, {2, 4}, {4, 3}, {4, 4}});

  // T* against N(T*) = N(ReT) + N(Q*) and H3 = H0' + R(Q).
  const Index a = n_re.rank(), b = nqstar.rank();
  const Index c = h0prime.rank(), d = rq.rank();
  out.r_star_block = ComplexMatrix::Zero(a + b, c + d);
  out.r_star_block.block(a, 0, b, c) = adj.block(2, 3);
  out.r_star_block.block(a, c, b, d) = adj.block(2, 4);
  out.q_star_block = ComplexMatrix::Zero(c + d, c + d);
  out.q_star_block.block(c, 0, d, c) = adj.block(4, 3);
  out.q_star_block.block(c, c, d, d) = adj.block(4, 4);

  out.adjoint_kernel_distance = projector_distance(
      kernel(t.adjoint(), tol), subspace_sum(n_re, nqstar, tol));
  out.adjoint_kernel_split = out.adjoint_kernel_distance <= tol.eq;
  return out;
}

Subspace krylov_invariant_subspace(const ComplexMatrix& t,
                                   const ComplexVector& v,
                                   const Tolerances& tol) {
  require_square(t, "krylov_invariant_subspace");
  if (v.size() != t.rows())
    throw DimensionMismatch("krylov_invariant_subspace: vector length");
  const Index n = t.rows();
  const double drop = 1e-9 * std::max(1.0, op_norm(t));

  ComplexMatrix basis(n, 0);
  ComplexVector w = v;
  for (Index step = 0; step <= n; ++step) {
    // Re-orthogonalize twice; classical Gram-Schmidt alone drifts.
    ComplexVector res = w - basis * (basis.adjoint() * w);
    res -= basis * (basis.adjoint() * res);
    if (res.norm() <= drop) break;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = res / res.norm();
    w = t * basis.col(basis.cols() - 1);
  }
  return {n, basis};
}

} // namespace ftk
