#include "qcond/positivity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcond/conditionals.hpp"
#include "qcond/rng.hpp"

namespace qcond {

namespace {

const double kModularSamples[] = {0.5, 1.0, std::numbers::pi};

void require_faithful(const JointState &s, Side side) {
  const bool ok = side == Side::A ? s.faithful_a : s.faithful_b;
  if (!ok)
    throw ValidationError("positivity: required marginal is not faithful");
}

/// tr_B(nu (1 (x) B)) for side A, tr_A(nu (A (x) 1)) for side B, as a map
/// into the marginal's algebra. Its image must commute with the marginal
/// for a *-preserving conditional to exist.
SuperOperator compressed_state_map(const JointState &s, Side side) {
  const int m = s.dim_a;
  const int n = s.dim_b;
  const ComplexMatrix &nu = s.nu.matrix;
  if (side == Side::A) {
    const ComplexMatrix id_a = ComplexMatrix::Identity(m, m);
    return from_action(n, m, [&](const ComplexMatrix &b) -> ComplexMatrix {
      return partial_trace(nu * kron(id_a, b), m, n, Side::B);
    });
  }
  const ComplexMatrix id_b = ComplexMatrix::Identity(n, n);
  return from_action(m, n, [&](const ComplexMatrix &a) -> ComplexMatrix {
    return partial_trace(nu * kron(a, id_b), m, n, Side::A);
  });
}

/// The standard conditional landing in `side` (only that marginal needs to
/// be invertible).
SuperOperator one_sided_conditional(const JointState &s, Side side) {
  const int m = s.dim_a;
  const int n = s.dim_b;
  const ComplexMatrix &nu = s.nu.matrix;
  if (side == Side::A) {
    const ComplexMatrix rho_inv = matrix_inv(s.rho.matrix);
    const ComplexMatrix id_a = ComplexMatrix::Identity(m, m);
    return from_action(n, m, [&](const ComplexMatrix &b) -> ComplexMatrix {
      return partial_trace(kron(id_a, b) * nu, m, n, Side::B) * rho_inv;
    });
  }
  const ComplexMatrix sigma_inv = matrix_inv(s.sigma.matrix);
  const ComplexMatrix id_b = ComplexMatrix::Identity(n, n);
  return from_action(m, n, [&](const ComplexMatrix &a) -> ComplexMatrix {
    return sigma_inv * partial_trace(nu * kron(a, id_b), m, n, Side::A);
  });
}

} // namespace

CriteriaReport star_criteria(const JointState &s, Side side) {
  require_faithful(s, side);
  const ComplexMatrix &marginal =
      side == Side::A ? s.rho.matrix : s.sigma.matrix;
  const SuperOperator compressed = compressed_state_map(s, side);
  const int d_in = compressed.dim_in;

  CriteriaReport report;
  report.side = side;
  for (int r = 0; r < d_in; ++r)
    for (int c = 0; c < d_in; ++c)
      report.max_commutator_norm =
          std::max(report.max_commutator_norm,
                   max_abs(commutator(marginal, unit_image(compressed, r, c))));
  report.star_preserving_exists =
      report.max_commutator_norm < tol::commutator_verdict;

  const SuperOperator cond = one_sided_conditional(s, side);
  for (const double t : kModularSamples) {
    const ComplexMatrix u = matrix_power_it(marginal, t);
    double dev = 0.0;
    for (int r = 0; r < d_in; ++r)
      for (int c = 0; c < d_in; ++c) {
        const ComplexMatrix image = unit_image(cond, r, c);
        dev = std::max(dev, max_abs_diff(u * image * u.adjoint(), image));
      }
    report.modular_check_residuals.emplace_back(t, dev);
  }

  for (const auto &[t, dev] : report.modular_check_residuals)
    if ((dev < tol::modular_residual) != report.star_preserving_exists)
      throw std::logic_error(
          "star_criteria: modular cross-check disagrees with the commutator "
          "verdict");
  return report;
}

ComplexMatrix OperatorSubspace::project(const ComplexMatrix &x) const {
  ComplexMatrix out = ComplexMatrix::Zero(ambient_dim, ambient_dim);
  for (const ComplexMatrix &b : basis)
    out += hs_inner(b, x) * b;
  return out;
}

double OperatorSubspace::residual(const ComplexMatrix &x) const {
  return max_abs_diff(x, project(x));
}

OperatorSubspace classify_subspace(int ambient_dim,
                                   std::vector<ComplexMatrix> basis) {
  OperatorSubspace space;
  space.ambient_dim = ambient_dim;
  space.basis = std::move(basis);
  space.contains_identity =
      space.residual(ComplexMatrix::Identity(ambient_dim, ambient_dim)) <=
      tol::closure_residual;
  space.closed_under_dagger = true;
  for (const ComplexMatrix &b : space.basis)
    if (space.residual(b.adjoint()) > tol::closure_residual) {
      space.closed_under_dagger = false;
      break;
    }
  space.closed_under_multiplication = true;
  for (const ComplexMatrix &x : space.basis) {
    for (const ComplexMatrix &y : space.basis)
      if (space.residual(x * y) > tol::closure_residual) {
        space.closed_under_multiplication = false;
        break;
      }
    if (!space.closed_under_multiplication)
      break;
  }
  return space;
}

OperatorSubspace full_matrix_space(int dim) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(dim) * dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r)
      basis.push_back(matrix_unit(dim, r, c));
  return classify_subspace(dim, std::move(basis));
}

namespace {

OperatorSubspace subspace_from_nullspace(const ComplexMatrix &op_rep,
                                         int ambient_dim, double null_tol) {
  std::vector<ComplexMatrix> basis;
  for (const ComplexVector &v : nullspace(op_rep, null_tol))
    basis.push_back(unvec(v, ambient_dim, ambient_dim));
  return classify_subspace(ambient_dim, std::move(basis));
}

} // namespace

OperatorSubspace commutant(const DensityMatrix &d, double null_tol) {
  const int n = d.dim;
  const SuperOperator comm_op =
      from_action(n, n, [&](const ComplexMatrix &x) -> ComplexMatrix {
        return commutator(d.matrix, x);
      });
  return subspace_from_nullspace(comm_op.rep, n, null_tol);
}

OperatorSubspace conditional_domain(const JointState &s, Side side,
                                    double null_tol) {
  // The side-B domain constrains elements of M_n against rho; the side-A
  // domain constrains elements of M_m against sigma.
  const Side marginal_side = side == Side::B ? Side::A : Side::B;
  require_faithful(s, Side::A);
  require_faithful(s, Side::B);
  const ComplexMatrix &marginal =
      marginal_side == Side::A ? s.rho.matrix : s.sigma.matrix;
  const SuperOperator compressed = compressed_state_map(s, marginal_side);
  const SuperOperator constraint = from_action(
      compressed.dim_in, compressed.dim_out,
      [&](const ComplexMatrix &x) -> ComplexMatrix {
        return commutator(marginal, compressed.apply(x));
      });
  return subspace_from_nullspace(constraint.rep, compressed.dim_in, null_tol);
}

PositiveConditionalDecision decide_positive_conditional(const JointState &s,
                                                        Side side,
                                                        int cross_check_probes,
                                                        std::uint64_t seed) {
  require_faithful(s, side);
  const CriteriaReport criteria = star_criteria(s, side);
  const SuperOperator cond = one_sided_conditional(s, side);

  PositiveConditionalDecision decision;
  decision.positive = criteria.star_preserving_exists;
  if (!decision.positive) {
    double worst = -1.0;
    for (int r = 0; r < cond.dim_in; ++r)
      for (int c = 0; c < cond.dim_in; ++c) {
        const double dev = max_abs_diff(unit_image(cond, r, c).adjoint(),
                                        unit_image(cond, c, r));
        if (dev > worst) {
          worst = dev;
          decision.star_violation_unit = std::make_pair(r, c);
        }
      }
    return decision;
  }

  SuperOperator certificate = conditional_ad_form(s, side);
  if (max_abs_diff(certificate.rep, cond.rep) > tol::certificate_match)
    throw std::logic_error(
        "decide_positive_conditional: Ad-form certificate does not match the "
        "conditional");
  const MapReport probe = analyze(cond, cross_check_probes, seed);
  if (probe.positivity_counterexample.has_value())
    throw std::logic_error(
        "decide_positive_conditional: probe found a violation despite a "
        "positive verdict");
  decision.certificate = std::move(certificate);
  return decision;
}

namespace {

/// Draw a PSD matrix, project it into the span, and re-symmetrize; reject
/// draws the projection pushed out of the PSD cone.
ComplexMatrix sample_psd_in_subspace(const OperatorSubspace &domain, Rng &rng) {
  const int n = domain.ambient_dim;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const ComplexMatrix g = rng.gaussian_matrix(n, n);
    ComplexMatrix w = g * g.adjoint();
    const double tr = w.trace().real();
    if (tr <= 0.0)
      continue;
    w /= tr;
    const ComplexMatrix p0 = domain.project(w);
    const ComplexMatrix p = 0.5 * (p0 + p0.adjoint());
    if (min_hermitian_eigenvalue(p) >= -1e-12)
      return p;
  }
  throw ValidationError(
      "could not sample a PSD element of the subspace after 100 attempts");
}

} // namespace

bool positivity_check_in_subspace(const SuperOperator &f,
                                  const OperatorSubspace &domain, int trials,
                                  std::uint64_t seed) {
  if (f.dim_in != domain.ambient_dim)
    throw ValidationError("positivity_check_in_subspace: dimension mismatch");
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(seed, static_cast<std::uint64_t>(trial));
    const ComplexMatrix p = sample_psd_in_subspace(domain, rng);
    const ComplexMatrix out = f.apply(p);
    if (!is_hermitian(out, 1e-8) ||
        min_hermitian_eigenvalue(out) < -tol::probe_violation)
      return false;
  }
  return true;
}

bool restricted_positivity_check(const JointState &s, Side side, int trials,
                                 std::uint64_t seed) {
  const OperatorSubspace domain = conditional_domain(s, side);
  const Side landing = side == Side::B ? Side::A : Side::B;
  const SuperOperator cond = one_sided_conditional(s, landing);
  return positivity_check_in_subspace(cond, domain, trials, seed);
}

bool dual_commutant_inference_check(const JointState &s, int trials,
                                    std::uint64_t seed) {
  const ConditionalPair pair = build_conditionals(s);
  const OperatorSubspace comm_rho = commutant(s.rho);
  const OperatorSubspace comm_sigma = commutant(s.sigma);

  const auto side_ok = [&](const SuperOperator &dual,
                           const OperatorSubspace &comm,
                           std::uint64_t stream_base) {
    for (int trial = 0; trial < trials; ++trial) {
      Rng rng(seed, stream_base + static_cast<std::uint64_t>(trial));
      ComplexMatrix p = sample_psd_in_subspace(comm, rng);
      const double tr = p.trace().real();
      if (std::abs(tr - 1.0) > 0.5)
        throw std::logic_error("commutant sample lost its trace");
      p /= tr;
      const ComplexMatrix out = dual.apply(p);
      if (!is_hermitian(out, 1e-8) ||
          min_hermitian_eigenvalue(out) < -tol::probe_violation ||
          std::abs(out.trace() - Complex(1.0, 0.0)) > tol::trace_one)
        return false;
    }
    return true;
  };

  return side_ok(pair.infer_a_to_b, comm_rho, 0) &&
         side_ok(pair.infer_b_to_a, comm_sigma, 1u << 20);
}

} // namespace qcond
