#ifndef QCOND_BAYES_HPP
#define QCOND_BAYES_HPP

#include "qcond/channels.hpp"
#include "qcond/states.hpp"

namespace qcond {

/// A unital map f: M_n -> M_m together with the states it must preserve:
/// tr(sigma B) = tr(rho f(B)) for all B. Use make_bayes_input to validate.
struct BayesInput {
  SuperOperator f;
  DensityMatrix rho;   // on the codomain M_m
  DensityMatrix sigma; // on the domain M_n, must be faithful
};

/// Validates state preservation on all matrix units (within its gate) and
/// faithfulness of sigma; throws ValidationError otherwise.
BayesInput make_bayes_input(SuperOperator f, DensityMatrix rho,
                            DensityMatrix sigma);

/// Left Bayes map A -> sigma^{-1} f*(rho A); satisfies
/// tr(sigma L(A) B) = tr(rho A f(B)) on all unit pairs.
SuperOperator bayes_left(const BayesInput &in);

/// Right Bayes map A -> f*(A rho) sigma^{-1}; satisfies
/// tr(sigma B R(A)) = tr(rho f(B) A).
SuperOperator bayes_right(const BayesInput &in);

/// *-preserving Bayes map
/// A -> sqrt(sigma^{-1}) f*(sqrt(rho) A sqrt(rho)) sqrt(sigma^{-1}),
/// the dual of the Petz recovery map. rho may be rank deficient; only sigma
/// is inverted.
SuperOperator bayes_star(const BayesInput &in);

} // namespace qcond

#endif
