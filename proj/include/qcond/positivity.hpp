#ifndef QCOND_POSITIVITY_HPP
#define QCOND_POSITIVITY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qcond/channels.hpp"
#include "qcond/states.hpp"

namespace qcond {

/// Outcome of the exact *-preservation criteria for the conditional landing
/// in `side`. The commutator verdict is the decision; the modular-group
/// residuals at a few sampled t cross-check it.
struct CriteriaReport {
  Side side = Side::A;
  bool star_preserving_exists = false;
  double max_commutator_norm = 0.0; // worst max-abs entry over matrix units
  std::vector<std::pair<double, double>> modular_check_residuals; // (t, dev)
};

CriteriaReport star_criteria(const JointState &s, Side side);

/// A finite basis of matrices spanning a commutant or conditional domain,
/// orthonormal under the Hilbert-Schmidt inner product.
struct OperatorSubspace {
  int ambient_dim = 0;
  std::vector<ComplexMatrix> basis;
  bool contains_identity = false;
  bool closed_under_dagger = false;
  bool closed_under_multiplication = false;

  int dimension() const { return static_cast<int>(basis.size()); }
  bool operator_system() const {
    return contains_identity && closed_under_dagger;
  }
  /// HS-orthogonal projection onto the span.
  ComplexMatrix project(const ComplexMatrix &x) const;
  /// max-abs distance of x from the span.
  double residual(const ComplexMatrix &x) const;
};

/// Classify the span of (already orthonormal) basis matrices.
OperatorSubspace classify_subspace(int ambient_dim,
                                   std::vector<ComplexMatrix> basis);

OperatorSubspace full_matrix_space(int dim);

/// Commutant {x : [d, x] = 0}, computed as the nullspace of the commutator
/// superoperator. Always a unital *-closed algebra.
OperatorSubspace commutant(const DensityMatrix &d,
                           double null_tol = tol::nullspace_rel);

/// Conditional domain: side B is {B : [rho, tr_B(nu (1 (x) B))] = 0}, the
/// largest subspace on which the conditional onto A stays positive; side A
/// is the sigma-side analogue. Always an operator system.
OperatorSubspace conditional_domain(const JointState &s, Side side,
                                    double null_tol = tol::nullspace_rel);

struct PositiveConditionalDecision {
  bool positive = false;
  /// Present when positive: the manifestly positive Ad-form conditional,
  /// verified to coincide with the standard one.
  std::optional<SuperOperator> certificate;
  /// Present when not positive: matrix-unit indices (r, c) witnessing the
  /// worst *-preservation failure.
  std::optional<std::pair<int, int>> star_violation_unit;
};

/// Exact decision via the commutator criterion (sound and complete for
/// conditionals); probing is used only as a cross-check of the verdict.
PositiveConditionalDecision decide_positive_conditional(const JointState &s,
                                                        Side side,
                                                        int cross_check_probes = 500,
                                                        std::uint64_t seed = 42);

/// Samples PSD matrices inside `domain` (projection + rejection), applies
/// `f`, and reports whether every output stayed PSD within the probe gate.
bool positivity_check_in_subspace(const SuperOperator &f,
                                  const OperatorSubspace &domain, int trials,
                                  std::uint64_t seed);

/// positivity_check_in_subspace over the conditional domain of `side` and
/// the conditional landing in the opposite algebra.
bool restricted_positivity_check(const JointState &s, Side side, int trials,
                                 std::uint64_t seed);

/// Samples density matrices inside the commutants of rho and sigma, pushes
/// them through the dual conditionals, and checks the outputs are density
/// matrices.
bool dual_commutant_inference_check(const JointState &s, int trials,
                                    std::uint64_t seed);

} // namespace qcond

#endif
