#include "qcond/matcore.hpp"

#include <cmath>
#include <string>

namespace qcond {

ComplexMatrix matrix_unit(int dim, int i, int j) {
  if (i < 0 || j < 0 || i >= dim || j >= dim)
    throw ValidationError("matrix_unit: index out of range");
  ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &joint, int dim_a, int dim_b,
                            Side traced) {
  const Eigen::Index d = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (dim_a < 1 || dim_b < 1 || joint.rows() != d || joint.cols() != d)
    throw ValidationError("partial_trace: joint must be (dimA*dimB)-square");
  if (traced == Side::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k)
          out(i, j) += joint(i * dim_b + k, j * dim_b + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (int k = 0; k < dim_b; ++k)
    for (int l = 0; l < dim_b; ++l)
      for (int i = 0; i < dim_a; ++i)
        out(k, l) += joint(i * dim_b + k, i * dim_b + l);
  return out;
}

HermitianEigen hermitian_eig(const ComplexMatrix &h, double hermitian_eps) {
  if (h.rows() != h.cols())
    throw ValidationError("hermitian_eig: matrix must be square");
  if (max_abs_diff(h, h.adjoint()) > hermitian_eps)
    throw ValidationError("hermitian_eig: matrix is not Hermitian within " +
                          std::to_string(hermitian_eps));
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw ValidationError("hermitian_eig: eigensolver failed to converge");
  // Eigen sorts ascending; flip to non-increasing.
  HermitianEigen out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

namespace {

ComplexMatrix rebuild(const HermitianEigen &eig, const RealVector &mapped) {
  return eig.eigenvectors * mapped.asDiagonal().toDenseMatrix().cast<Complex>() *
         eig.eigenvectors.adjoint();
}

} // namespace

ComplexMatrix matrix_sqrt(const ComplexMatrix &h) {
  HermitianEigen eig = hermitian_eig(h);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  RealVector vals = eig.eigenvalues;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] < -tol::psd)
      throw ValidationError("matrix_sqrt: eigenvalue below -" +
                            std::to_string(tol::psd));
    // Solver noise on rank-deficient inputs sits near 1e-16 * scale; taking
    // its square root would inflate it to ~1e-8, so clamp it to zero along
    // with the tiny negatives.
    vals[i] = vals[i] <= 1e-14 * scale ? 0.0 : std::sqrt(vals[i]);
  }
  return rebuild(eig, vals);
}

ComplexMatrix matrix_inv(const ComplexMatrix &h, double rank_rel) {
  HermitianEigen eig = hermitian_eig(h);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  RealVector vals = eig.eigenvalues;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (scale == 0.0 || std::abs(vals[i]) <= rank_rel * scale)
      throw ValidationError("matrix_inv: matrix is singular");
    vals[i] = 1.0 / vals[i];
  }
  return rebuild(eig, vals);
}

ComplexMatrix matrix_inv_sqrt(const ComplexMatrix &h, double rank_rel) {
  HermitianEigen eig = hermitian_eig(h);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  RealVector vals = eig.eigenvalues;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (scale == 0.0 || vals[i] <= rank_rel * scale)
      throw ValidationError(
          "matrix_inv_sqrt: matrix is singular or not positive definite");
    vals[i] = 1.0 / std::sqrt(vals[i]);
  }
  return rebuild(eig, vals);
}

ComplexMatrix matrix_power_it(const ComplexMatrix &h, double t,
                              double rank_rel) {
  HermitianEigen eig = hermitian_eig(h);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  const Eigen::Index n = eig.eigenvalues.size();
  ComplexVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = eig.eigenvalues[i];
    if (scale == 0.0 || lam <= rank_rel * scale)
      throw ValidationError("matrix_power_it: spectrum must be positive");
    phases[i] = std::exp(Complex(0.0, t * std::log(lam)));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix commutator(const ComplexMatrix &x, const ComplexMatrix &y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw ValidationError("commutator: matrices must be square of equal size");
  return x * y - y * x;
}

std::vector<ComplexVector> nullspace(const ComplexMatrix &op, double tol_rel) {
  if (!(tol_rel > 0.0 && tol_rel < 1.0))
    throw ValidationError("nullspace: tol_rel must lie in (0,1)");
  Eigen::JacobiSVD<ComplexMatrix> svd(op, Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv[0] : 0.0;
  Eigen::Index rank = 0;
  if (sigma_max > 0.0)
    while (rank < sv.size() && sv[rank] >= tol_rel * sigma_max)
      ++rank;
  const ComplexMatrix &v = svd.matrixV();
  std::vector<ComplexVector> basis;
  basis.reserve(v.cols() - rank);
  for (Eigen::Index c = rank; c < v.cols(); ++c)
    basis.push_back(v.col(c));
  return basis;
}

double min_hermitian_eigenvalue(const ComplexMatrix &x) {
  if (x.rows() != x.cols())
    throw ValidationError("min_hermitian_eigenvalue: matrix must be square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (x + x.adjoint()));
  return solver.eigenvalues().minCoeff();
}

} // namespace qcond
