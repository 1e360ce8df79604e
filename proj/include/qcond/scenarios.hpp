#ifndef QCOND_SCENARIOS_HPP
#define QCOND_SCENARIOS_HPP

#include <cstdint>
#include <map>
#include <string>

#include "qcond/states.hpp"

namespace qcond {

/// A named joint state bundled with closed-form fixtures. The `expected`
/// matrices are built from independently transcribed formulas (never from
/// the live construction paths) so they can serve as reproduction oracles.
struct ScenarioSpec {
  std::string name;
  std::map<std::string, double> params;
  JointState state;
  std::map<std::string, ComplexMatrix> expected;
};

/// Bohm's EPR pair: the singlet-state density matrix on two qubits.
ScenarioSpec epr();

/// One-parameter family of rank-one states with marginals
/// rho = [[1, q-p], [q-p, 1]]/2 and sigma = diag(p, q), q = 1-p. Its
/// conditionals are positive exactly at p = 1/2.
ScenarioSpec family(double p);

/// Seeded random joint state nu = sum_r w_r v_r v_r^dagger (Dirichlet
/// weights, Haar unit vectors), retried up to 10 times until both marginals
/// are faithful. Identical (seed, m, n, rank) reproduce nu bit-for-bit.
ScenarioSpec random_joint(std::uint64_t seed, int m, int n, int rank);

/// CLI-facing lookup: "epr", "family:p=0.3",
/// "random:seed=7,m=2,n=2,rank=4".
ScenarioSpec scenario_by_name(const std::string &descriptor);

} // namespace qcond

#endif
