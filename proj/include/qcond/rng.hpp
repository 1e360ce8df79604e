#ifndef QCOND_RNG_HPP
#define QCOND_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "qcond/matcore.hpp"

namespace qcond {

// Deterministic randomness for probes, ensembles, and scenario generators.
//
// The generator algorithm is pinned so fixtures reproduce across platforms:
// a SplitMix64 round mixes the user seed, a second round folds in the stream
// index, and the result seeds a std::mt19937_64 (both engines are fully
// specified by their published constants). Uniform doubles take the top 53
// bits; Gaussians come from a Box-Muller pair.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform double in [0, 1).
  double uniform();
  /// Standard normal via Box-Muller.
  double gaussian();
  /// Independent N(0,1) real and imaginary parts.
  Complex complex_gaussian();

  ComplexVector gaussian_vector(int n);
  /// Haar-random unit vector (normalized complex Gaussian).
  ComplexVector unit_vector(int n);
  ComplexMatrix gaussian_matrix(int rows, int cols);
  /// Flat Dirichlet weights: k exponentials, normalized.
  std::vector<double> dirichlet(int k);

private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace qcond

#endif
