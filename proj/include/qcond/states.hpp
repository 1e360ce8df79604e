#ifndef QCOND_STATES_HPP
#define QCOND_STATES_HPP

#include "qcond/matcore.hpp"

namespace qcond {

/// Trace-one positive semidefinite matrix. Construction validates
/// Hermiticity, unit trace, and positivity (each within its gate).
struct DensityMatrix {
  ComplexMatrix matrix;
  int dim = 0;

  explicit DensityMatrix(ComplexMatrix m);
};

Complex expectation(const DensityMatrix &state, const ComplexMatrix &observable);

/// True when the spectrum is bounded away from zero:
/// min eig > rel_tol * max eig.
bool is_faithful(const DensityMatrix &d, double rel_tol = tol::faithful_rel);

DensityMatrix pure_state(const ComplexVector &v);

/// Bipartite density matrix on M_dimA (x) M_dimB with eagerly cached
/// marginals and faithfulness flags.
struct JointState {
  DensityMatrix nu;
  int dim_a = 0;
  int dim_b = 0;
  DensityMatrix rho;   // tr_B(nu)
  DensityMatrix sigma; // tr_A(nu)
  bool faithful_a = false;
  bool faithful_b = false;
  double faithful_rel_tol = tol::faithful_rel;
};

JointState make_joint(const ComplexMatrix &nu, int dim_a, int dim_b,
                      double faithful_rel_tol = tol::faithful_rel);

/// Diagonal embedding of a classical pmf: nu[(i,k),(i,k)] = P(i,k).
JointState classical_joint(const RealMatrix &pmf);

/// Exchange the two tensor factors: nu'[(k,i),(l,j)] = nu[(i,k),(j,l)].
JointState swap_factors(const JointState &s);

} // namespace qcond

#endif
