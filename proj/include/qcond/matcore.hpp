#ifndef QCOND_MATCORE_HPP
#define QCOND_MATCORE_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qcond {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Thrown when an input violates a documented precondition: shape mismatch,
/// non-density input, non-faithful marginal, state-preservation failure.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Numeric gates used across the library. Every boolean verdict that depends
// on one of these is reported together with the value that was applied.
namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace_one = 1e-10;
inline constexpr double psd = 1e-10;           // densities: min eig >= -psd
inline constexpr double eig_reconstruct = 1e-10;
inline constexpr double nullspace_rel = 1e-10; // singular value cut, relative
inline constexpr double rank_rel = 1e-10;      // inverse/inv-sqrt gate
inline constexpr double faithful_rel = 1e-9;   // min eig > faithful_rel * max eig
inline constexpr double choi_psd = 1e-9;       // CP: choi min eig >= -choi_psd
inline constexpr double unital = 1e-10;
inline constexpr double star_preserving = 1e-10;
inline constexpr double state_preserving = 1e-9;
inline constexpr double commutator_verdict = 1e-9;
inline constexpr double modular_residual = 1e-8;
inline constexpr double defining_identity = 1e-10;
inline constexpr double closure_residual = 1e-9;
inline constexpr double probe_violation = 1e-9; // min eig < -this is a violation
inline constexpr double dual_cross_check = 1e-10;
inline constexpr double certificate_match = 1e-9;
} // namespace tol

/// Tensor factor selector for bipartite operations.
enum class Side { A, B };

inline ComplexMatrix dagger(const ComplexMatrix &m) { return m.adjoint(); }

inline double max_abs(const ComplexMatrix &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  return max_abs(a - b);
}

inline bool is_hermitian(const ComplexMatrix &m, double eps = tol::hermitian) {
  return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= eps;
}

/// Hilbert-Schmidt inner product tr(a^dagger b).
inline Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
  return (a.adjoint() * b).trace();
}

/// Standard matrix unit E_ij (1 at row i, col j; zero-based indices).
ComplexMatrix matrix_unit(int dim, int i, int j);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

// Composite indices follow the row-major Kronecker convention:
// the pair (i on A, k on B) sits at slot i*dimB + k, so the two-qubit basis
// reads |00>, |01>, |10>, |11>.
ComplexMatrix partial_trace(const ComplexMatrix &joint, int dim_a, int dim_b,
                            Side traced);

struct HermitianEigen {
  RealVector eigenvalues;     // non-increasing
  ComplexMatrix eigenvectors; // unitary; column i pairs with eigenvalues[i]
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (h + h^dagger)/2 first; deviations beyond `hermitian_eps` are rejected.
HermitianEigen hermitian_eig(const ComplexMatrix &h,
                             double hermitian_eps = tol::hermitian);

// Functional calculus on Hermitian matrices, V diag(f(lambda)) V^dagger.
ComplexMatrix matrix_sqrt(const ComplexMatrix &h);
ComplexMatrix matrix_inv(const ComplexMatrix &h,
                         double rank_rel = tol::rank_rel);
ComplexMatrix matrix_inv_sqrt(const ComplexMatrix &h,
                              double rank_rel = tol::rank_rel);
/// h^{it} = exp(i t ln h); unitary, requires strictly positive spectrum.
ComplexMatrix matrix_power_it(const ComplexMatrix &h, double t,
                              double rank_rel = tol::rank_rel);

ComplexMatrix commutator(const ComplexMatrix &x, const ComplexMatrix &y);

/// Orthonormal basis of {v : op v ~ 0}; a singular value counts as zero when
/// it is below tol_rel * sigma_max. The all-zero matrix yields the full space.
std::vector<ComplexVector> nullspace(const ComplexMatrix &op,
                                     double tol_rel = tol::nullspace_rel);

/// Smallest eigenvalue of the Hermitian part (x + x^dagger)/2.
double min_hermitian_eigenvalue(const ComplexMatrix &x);

} // namespace qcond

#endif
