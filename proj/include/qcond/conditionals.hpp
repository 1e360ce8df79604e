#ifndef QCOND_CONDITIONALS_HPP
#define QCOND_CONDITIONALS_HPP

#include "qcond/channels.hpp"
#include "qcond/states.hpp"

namespace qcond {

// Direction bookkeeping, fixed once: onto_a maps M_n -> M_m in the
// Heisenberg picture (it conditions observables of B on A-side evidence),
// so Schrodinger-picture inference from Alice to Bob applies its dual.
enum class Direction { AtoB, BtoA };

/// The unique conditionals of a joint state with faithful marginals:
///   onto_a(B) = tr_B((1 (x) B) nu) rho^{-1}
///   onto_b(A) = sigma^{-1} tr_A(nu (A (x) 1))
/// together with their trace-preserving duals.
struct ConditionalPair {
  SuperOperator onto_a;       // M_n -> M_m, unital
  SuperOperator onto_b;       // M_m -> M_n, unital
  SuperOperator infer_a_to_b; // dual of onto_a, M_m -> M_n
  SuperOperator infer_b_to_a; // dual of onto_b, M_n -> M_m
  JointState source;
};

/// Requires both marginals faithful (supports of non-faithful marginals are
/// out of scope and refused). The closed-form duals are cross-checked
/// against hs_dual of the primal maps.
ConditionalPair build_conditionals(const JointState &s);

/// Ad-form conditional, side A: B -> rho^{-1/2} tr_B(nu (1 (x) B)) rho^{-1/2}
/// (side B swaps the roles of the factors). Coincides with the standard
/// conditional exactly when a *-preserving conditional exists.
SuperOperator conditional_ad_form(const JointState &s, Side side = Side::A);

struct InferenceResult {
  ComplexMatrix state;       // trace one; not guaranteed Hermitian or PSD
  double min_eigenvalue = 0; // of the Hermitian part
  bool hermitian = false;
};

InferenceResult infer(const ConditionalPair &pair, const DensityMatrix &evidence,
                      Direction direction);

/// Builds the diagonal joint state of the pmf, conditions it, and compares
/// the diagonal of onto_a's unit images against brute-force p(b|a).
/// Marginals must be strictly positive.
bool classical_conditional_check(const RealMatrix &pmf);

} // namespace qcond

#endif
