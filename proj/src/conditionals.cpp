#include "qcond/conditionals.hpp"

#include <cmath>
#include <stdexcept>

namespace qcond {

namespace {

void require_faithful(const JointState &s, Side side) {
  if (side == Side::A && !s.faithful_a)
    throw ValidationError(
        "conditionals: marginal on A is not faithful; states with "
        "non-invertible marginals are not supported");
  if (side == Side::B && !s.faithful_b)
    throw ValidationError(
        "conditionals: marginal on B is not faithful; states with "
        "non-invertible marginals are not supported");
}

} // namespace

ConditionalPair build_conditionals(const JointState &s) {
  require_faithful(s, Side::A);
  require_faithful(s, Side::B);
  const int m = s.dim_a;
  const int n = s.dim_b;
  const ComplexMatrix &nu = s.nu.matrix;
  const ComplexMatrix rho_inv = matrix_inv(s.rho.matrix);
  const ComplexMatrix sigma_inv = matrix_inv(s.sigma.matrix);
  const ComplexMatrix id_a = ComplexMatrix::Identity(m, m);
  const ComplexMatrix id_b = ComplexMatrix::Identity(n, n);

  SuperOperator onto_a =
      from_action(n, m, [&](const ComplexMatrix &b) -> ComplexMatrix {
        return partial_trace(kron(id_a, b) * nu, m, n, Side::B) * rho_inv;
      });
  SuperOperator onto_b =
      from_action(m, n, [&](const ComplexMatrix &a) -> ComplexMatrix {
        return sigma_inv * partial_trace(nu * kron(a, id_b), m, n, Side::A);
      });
  SuperOperator infer_a_to_b =
      from_action(m, n, [&](const ComplexMatrix &a) -> ComplexMatrix {
        return partial_trace(nu * kron(ComplexMatrix(rho_inv * a), id_b), m, n,
                             Side::A);
      });
  SuperOperator infer_b_to_a =
      from_action(n, m, [&](const ComplexMatrix &b) -> ComplexMatrix {
        return partial_trace(kron(id_a, ComplexMatrix(b * sigma_inv)) * nu, m,
                             n, Side::B);
      });

  // The closed-form duals and hs_dual must agree; a gap means the formulas
  // or the vectorization convention drifted apart.
  if (max_abs_diff(infer_a_to_b.rep, hs_dual(onto_a).rep) > tol::dual_cross_check ||
      max_abs_diff(infer_b_to_a.rep, hs_dual(onto_b).rep) > tol::dual_cross_check)
    throw std::logic_error("build_conditionals: dual cross-check failed");

  return ConditionalPair{std::move(onto_a), std::move(onto_b),
                         std::move(infer_a_to_b), std::move(infer_b_to_a), s};
}

SuperOperator conditional_ad_form(const JointState &s, Side side) {
  require_faithful(s, side);
  const int m = s.dim_a;
  const int n = s.dim_b;
  const ComplexMatrix &nu = s.nu.matrix;
  if (side == Side::A) {
    const ComplexMatrix root = matrix_inv_sqrt(s.rho.matrix);
    const ComplexMatrix id_a = ComplexMatrix::Identity(m, m);
    return from_action(n, m, [&](const ComplexMatrix &b) -> ComplexMatrix {
      return root * partial_trace(nu * kron(id_a, b), m, n, Side::B) * root;
    });
  }
  const ComplexMatrix root = matrix_inv_sqrt(s.sigma.matrix);
  const ComplexMatrix id_b = ComplexMatrix::Identity(n, n);
  return from_action(m, n, [&](const ComplexMatrix &a) -> ComplexMatrix {
    return root * partial_trace(nu * kron(a, id_b), m, n, Side::A) * root;
  });
}

InferenceResult infer(const ConditionalPair &pair, const DensityMatrix &evidence,
                      Direction direction) {
  const SuperOperator &map =
      direction == Direction::AtoB ? pair.infer_a_to_b : pair.infer_b_to_a;
  if (evidence.dim != map.dim_in)
    throw ValidationError("infer: evidence dimension mismatch");
  InferenceResult out;
  out.state = map.apply(evidence.matrix);
  out.min_eigenvalue = min_hermitian_eigenvalue(out.state);
  out.hermitian = is_hermitian(out.state);
  return out;
}

bool classical_conditional_check(const RealMatrix &pmf) {
  const int m = static_cast<int>(pmf.rows());
  const int n = static_cast<int>(pmf.cols());
  RealVector row_sums = pmf.rowwise().sum();
  RealVector col_sums = pmf.colwise().sum();
  if (row_sums.minCoeff() <= 0.0 || col_sums.minCoeff() <= 0.0)
    throw ValidationError("classical_conditional_check: zero marginal");

  const JointState s = classical_joint(pmf);
  const ConditionalPair pair = build_conditionals(s);

  for (int k = 0; k < n; ++k) {
    const ComplexMatrix image = unit_image(pair.onto_a, k, k);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        // onto_a(E_kk) must be diagonal with entries p(B=k | A=i).
        const double expected = i == j ? pmf(i, k) / row_sums[i] : 0.0;
        if (std::abs(image(i, j) - Complex(expected, 0.0)) > 1e-12)
          return false;
      }
  }
  return true;
}

} // namespace qcond
