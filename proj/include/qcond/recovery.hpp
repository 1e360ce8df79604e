#ifndef QCOND_RECOVERY_HPP
#define QCOND_RECOVERY_HPP

#include "qcond/channels.hpp"
#include "qcond/states.hpp"

namespace qcond {

/// Petz recovery map precomposed with the B-inclusion:
/// B -> sqrt(rho^{-1}) tr_B(sqrt(nu) (1 (x) B) sqrt(nu)) sqrt(rho^{-1}).
/// Always completely positive and unital; construction asserts both.
SuperOperator petz_conditional(const JointState &s);

/// Leifer-Spekkens acausal belief propagation, stated directly in the
/// Schrodinger picture: A -> tr_A(nu (rho^{-1/2} A rho^{-1/2} (x) 1)).
/// Positive and trace-preserving on density inputs.
SuperOperator ls_conditional_dual(const JointState &s);

/// Half the Schatten-1 norm of x - y (sum of singular values / 2).
double trace_distance(const ComplexMatrix &x, const ComplexMatrix &y);

/// Side-by-side A-to-B inference through the conditional dual, the Petz
/// dual, and belief propagation.
struct InferenceComparison {
  ComplexMatrix evidence;
  ComplexMatrix out_conditional;
  ComplexMatrix out_petz;
  ComplexMatrix out_ls;
  double dist_conditional_petz = 0.0;
  double dist_conditional_ls = 0.0;
  double dist_petz_ls = 0.0;
  bool psd_conditional = false;
  bool psd_petz = false;
  bool psd_ls = false;
};

InferenceComparison compare_inference(const JointState &s,
                                      const DensityMatrix &evidence);

} // namespace qcond

#endif
