#ifndef QCOND_CHANNELS_HPP
#define QCOND_CHANNELS_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "qcond/matcore.hpp"

namespace qcond {

// Linear maps between matrix algebras are stored through their action on
// column-stacked vectorizations: vec(F(B)) = rep * vec(B), where vec stacks
// columns top-to-bottom, left-to-right. The convention is global; rep
// matrices are interchange-comparable across modules and serialized files.

/// vec: M(r, c) -> slot c*rows + r.
ComplexVector vec(const ComplexMatrix &m);
ComplexMatrix unvec(const ComplexVector &v, int rows, int cols);

struct SuperOperator {
  int dim_in = 0;  // domain M_{dim_in}
  int dim_out = 0; // codomain M_{dim_out}
  ComplexMatrix rep; // dim_out^2 x dim_in^2

  /// unvec(rep * vec(b)).
  ComplexMatrix apply(const ComplexMatrix &b) const;
};

/// Assemble a map column-by-column from its action on the matrix units of
/// the domain. The action must return dim_out-square matrices.
SuperOperator
from_action(int dim_in, int dim_out,
            const std::function<ComplexMatrix(const ComplexMatrix &)> &action);

SuperOperator identity_map(int dim);

/// Ad_A: C -> A C A^dagger.
SuperOperator ad_map(const ComplexMatrix &a);

/// F(E_rc), read off the stored representation.
ComplexMatrix unit_image(const SuperOperator &f, int r, int c);

/// Adjoint for the bilinear trace pairing: tr(F*(A) B) = tr(A F(B)) for all
/// A, B. For *-preserving maps this coincides with the sesquilinear
/// Hilbert-Schmidt adjoint.
SuperOperator hs_dual(const SuperOperator &f);

/// compose(f, g) = f after g.
SuperOperator compose(const SuperOperator &f, const SuperOperator &g);

/// Choi matrix sum_{k,l} E_kl (x) F(E_kl); F is completely positive iff this
/// is positive semidefinite.
ComplexMatrix choi(const SuperOperator &f);

struct MapReport {
  bool unital = false;
  bool star_preserving = false;
  bool completely_positive = false;
  double choi_min_eigenvalue = 0.0; // of the Hermitian part of the Choi matrix
  bool choi_hermitian = false;
  // First Haar-random unit vector v with min-eig(F(vv^dagger)) < -probe tol,
  // if any. Absence is NOT a positivity certificate for general maps.
  std::optional<ComplexVector> positivity_counterexample;
  int probe_samples = 0;
};

/// Classify a map: unitality, *-preservation on matrix units, complete
/// positivity via the Choi spectrum, and seeded rank-1 positivity probing.
MapReport analyze(const SuperOperator &f, int probes = 2000,
                  std::uint64_t seed = 42);

} // namespace qcond

#endif
