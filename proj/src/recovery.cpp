#include "qcond/recovery.hpp"

#include <stdexcept>

#include "qcond/conditionals.hpp"

namespace qcond {

SuperOperator petz_conditional(const JointState &s) {
  if (!s.faithful_a)
    throw ValidationError("petz_conditional: marginal on A is not faithful");
  const int m = s.dim_a;
  const int n = s.dim_b;
  const ComplexMatrix nu_sqrt = matrix_sqrt(s.nu.matrix);
  const ComplexMatrix rho_inv_sqrt = matrix_inv_sqrt(s.rho.matrix);
  const ComplexMatrix id_a = ComplexMatrix::Identity(m, m);

  SuperOperator out =
      from_action(n, m, [&](const ComplexMatrix &b) -> ComplexMatrix {
        const ComplexMatrix mid =
            partial_trace(nu_sqrt * kron(id_a, b) * nu_sqrt, m, n, Side::B);
        return rho_inv_sqrt * mid * rho_inv_sqrt;
      });

  const MapReport check = analyze(out, 1, 0);
  if (!check.unital || !check.completely_positive)
    throw std::logic_error("petz_conditional: map failed its CPU guarantee");
  return out;
}

SuperOperator ls_conditional_dual(const JointState &s) {
  if (!s.faithful_a)
    throw ValidationError("ls_conditional_dual: marginal on A is not faithful");
  const int m = s.dim_a;
  const int n = s.dim_b;
  const ComplexMatrix &nu = s.nu.matrix;
  const ComplexMatrix rho_inv_sqrt = matrix_inv_sqrt(s.rho.matrix);
  const ComplexMatrix id_b = ComplexMatrix::Identity(n, n);
  return from_action(m, n, [&](const ComplexMatrix &a) -> ComplexMatrix {
    const ComplexMatrix conjugated = rho_inv_sqrt * a * rho_inv_sqrt;
    return partial_trace(nu * kron(conjugated, id_b), m, n, Side::A);
  });
}

double trace_distance(const ComplexMatrix &x, const ComplexMatrix &y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw ValidationError("trace_distance: shape mismatch");
  Eigen::JacobiSVD<ComplexMatrix> svd(x - y);
  return 0.5 * svd.singularValues().sum();
}

InferenceComparison compare_inference(const JointState &s,
                                      const DensityMatrix &evidence) {
  if (evidence.dim != s.dim_a)
    throw ValidationError("compare_inference: evidence must live on M_dimA");
  const ConditionalPair pair = build_conditionals(s);
  const SuperOperator petz_dual = hs_dual(petz_conditional(s));
  const SuperOperator ls = ls_conditional_dual(s);

  InferenceComparison cmp;
  cmp.evidence = evidence.matrix;
  cmp.out_conditional = pair.infer_a_to_b.apply(evidence.matrix);
  cmp.out_petz = petz_dual.apply(evidence.matrix);
  cmp.out_ls = ls.apply(evidence.matrix);
  cmp.dist_conditional_petz = trace_distance(cmp.out_conditional, cmp.out_petz);
  cmp.dist_conditional_ls = trace_distance(cmp.out_conditional, cmp.out_ls);
  cmp.dist_petz_ls = trace_distance(cmp.out_petz, cmp.out_ls);

  const auto psd = [](const ComplexMatrix &x) {
    return is_hermitian(x, 1e-9) &&
           min_hermitian_eigenvalue(x) >= -tol::probe_violation;
  };
  cmp.psd_conditional = psd(cmp.out_conditional);
  cmp.psd_petz = psd(cmp.out_petz);
  cmp.psd_ls = psd(cmp.out_ls);
  return cmp;
}

} // namespace qcond
