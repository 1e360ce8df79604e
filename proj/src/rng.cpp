#include "qcond/rng.hpp"

#include <cmath>
#include <numbers>

namespace qcond {

namespace {

std::uint64_t splitmix64(std::uint64_t &state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state = mixed + stream;
  engine_.seed(splitmix64(state));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // 1 - uniform() lies in (0, 1], keeping the log finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

ComplexVector Rng::gaussian_vector(int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i)
    v[i] = complex_gaussian();
  return v;
}

ComplexVector Rng::unit_vector(int n) {
  ComplexVector v = gaussian_vector(n);
  double norm = v.norm();
  while (norm == 0.0) {
    v = gaussian_vector(n);
    norm = v.norm();
  }
  return v / norm;
}

ComplexMatrix Rng::gaussian_matrix(int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r)
      m(r, c) = complex_gaussian();
  return m;
}

std::vector<double> Rng::dirichlet(int k) {
  std::vector<double> w(k);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    w[i] = -std::log(1.0 - uniform());
    total += w[i];
  }
  for (double &x : w)
    x /= total;
  return w;
}

} // namespace qcond
