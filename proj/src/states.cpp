#include "qcond/states.hpp"

#include <cmath>
#include <string>

namespace qcond {

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix(std::move(m)) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1)
    throw ValidationError("density matrix must be square");
  dim = static_cast<int>(matrix.rows());
  if (!is_hermitian(matrix))
    throw ValidationError("density matrix is not Hermitian within " +
                          std::to_string(tol::hermitian));
  const double tr = matrix.trace().real();
  if (std::abs(matrix.trace() - Complex(1.0, 0.0)) > tol::trace_one)
    throw ValidationError("density matrix trace is " + std::to_string(tr) +
                          ", expected 1");
  const HermitianEigen eig = hermitian_eig(matrix);
  if (eig.eigenvalues.minCoeff() < -tol::psd)
    throw ValidationError("density matrix has eigenvalue below -" +
                          std::to_string(tol::psd));
}

Complex expectation(const DensityMatrix &state,
                    const ComplexMatrix &observable) {
  if (observable.rows() != state.dim || observable.cols() != state.dim)
    throw ValidationError("expectation: observable dimension mismatch");
  return (state.matrix * observable).trace();
}

bool is_faithful(const DensityMatrix &d, double rel_tol) {
  const HermitianEigen eig = hermitian_eig(d.matrix);
  return eig.eigenvalues.minCoeff() >
         rel_tol * eig.eigenvalues.maxCoeff();
}

DensityMatrix pure_state(const ComplexVector &v) {
  const double norm2 = v.squaredNorm();
  if (norm2 < 1e-24)
    throw ValidationError("pure_state: zero vector");
  ComplexMatrix outer = v * v.adjoint() / norm2;
  return DensityMatrix(std::move(outer));
}

JointState make_joint(const ComplexMatrix &nu, int dim_a, int dim_b,
                      double faithful_rel_tol) {
  if (dim_a < 1 || dim_b < 1 ||
      nu.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw ValidationError("make_joint: nu must be (dimA*dimB)-square");
  DensityMatrix joint(nu);
  DensityMatrix rho(partial_trace(nu, dim_a, dim_b, Side::B));
  DensityMatrix sigma(partial_trace(nu, dim_a, dim_b, Side::A));
  const bool fa = is_faithful(rho, faithful_rel_tol);
  const bool fb = is_faithful(sigma, faithful_rel_tol);
  return JointState{std::move(joint), dim_a,  dim_b,
                    std::move(rho),   std::move(sigma),
                    fa,               fb,
                    faithful_rel_tol};
}

JointState classical_joint(const RealMatrix &pmf) {
  const int m = static_cast<int>(pmf.rows());
  const int n = static_cast<int>(pmf.cols());
  if (m < 1 || n < 1)
    throw ValidationError("classical_joint: empty pmf");
  double total = 0.0;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k) {
      if (pmf(i, k) < 0.0)
        throw ValidationError("classical_joint: negative entry");
      total += pmf(i, k);
    }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("classical_joint: entries sum to " +
                          std::to_string(total) + ", expected 1");
  ComplexMatrix nu = ComplexMatrix::Zero(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k)
      nu(i * n + k, i * n + k) = pmf(i, k);
  return make_joint(nu, m, n);
}

JointState swap_factors(const JointState &s) {
  const int m = s.dim_a;
  const int n = s.dim_b;
  ComplexMatrix swapped = ComplexMatrix::Zero(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < n; ++l)
          swapped(k * m + i, l * m + j) = s.nu.matrix(i * n + k, j * n + l);
  return make_joint(swapped, n, m, s.faithful_rel_tol);
}

} // namespace qcond
