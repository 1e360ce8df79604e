#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

#include "qcond/bayes.hpp"
#include "qcond/rng.hpp"

using namespace qcond;
using qtest::check_close;
using qtest::mat2;

namespace {

DensityMatrix random_density(Rng &rng, int n) {
  const ComplexMatrix g = rng.gaussian_matrix(n, n);
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix(w);
}

// Random completely positive unital map (Heisenberg picture).
SuperOperator random_cpu_map(Rng &rng, int n, int m, int kraus_count) {
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix total = ComplexMatrix::Zero(m, m);
  for (int i = 0; i < kraus_count; ++i) {
    kraus.push_back(rng.gaussian_matrix(m, n));
    total += kraus.back() * kraus.back().adjoint();
  }
  const ComplexMatrix norm = matrix_inv_sqrt(total);
  return from_action(n, m, [&](const ComplexMatrix &b) -> ComplexMatrix {
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (const ComplexMatrix &k : kraus)
      out += norm * k * b * k.adjoint() * norm;
    return out;
  });
}

// Builds the state a CPU map transports: sigma with tr(sigma B) = tr(rho F(B)).
BayesInput transported_input(const SuperOperator &f, DensityMatrix rho) {
  DensityMatrix sigma(hs_dual(f).apply(rho.matrix));
  return make_bayes_input(f, std::move(rho), std::move(sigma));
}

ComplexMatrix family_density(double p) {
  const double q = 1.0 - p;
  ComplexVector amp(4);
  amp << std::sqrt(p / 2), std::sqrt(q / 2), -std::sqrt(p / 2),
      std::sqrt(q / 2);
  return amp * amp.adjoint();
}

// The family conditional in closed form, used as a state-preserving map
// from (M_2, sigma) to (M_2, rho).
BayesInput family_input(double p) {
  const double q = 1.0 - p;
  const double spq = std::sqrt(p * q);
  SuperOperator f =
      from_action(2, 2, [=](const ComplexMatrix &x) -> ComplexMatrix {
        const Complex a = x(0, 0), b = x(0, 1), c = x(1, 0), d = x(1, 1);
        return 0.5 * mat2(a + d + (p * c + q * b) / spq,
                          d - a + (p * c - q * b) / spq,
                          d - a + (q * b - p * c) / spq,
                          a + d - (p * c + q * b) / spq);
      });
  DensityMatrix rho(mat2(0.5, 0.5 * (q - p), 0.5 * (q - p), 0.5));
  DensityMatrix sigma(mat2(p, 0, 0, q));
  return make_bayes_input(std::move(f), std::move(rho), std::move(sigma));
}

} // namespace

TEST_CASE("validation: state preservation and faithful sigma are enforced") {
  Rng rng(3);
  const DensityMatrix rho = random_density(rng, 2);
  const DensityMatrix wrong = random_density(rng, 2);
  CHECK_THROWS_AS(make_bayes_input(identity_map(2), rho, wrong),
                  ValidationError);
  CHECK_NOTHROW(make_bayes_input(identity_map(2), rho, rho));

  const DensityMatrix singular(mat2(1, 0, 0, 0));
  CHECK_THROWS_AS(make_bayes_input(identity_map(2), singular, singular),
                  ValidationError);
}

TEST_CASE("identity map inverts to the identity") {
  Rng rng(5);
  const DensityMatrix rho = random_density(rng, 3);
  const BayesInput in = make_bayes_input(identity_map(3), rho, rho);
  check_close(bayes_left(in).rep, identity_map(3).rep, 1e-10);
  check_close(bayes_right(in).rep, identity_map(3).rep, 1e-10);
  check_close(bayes_star(in).rep, identity_map(3).rep, 1e-10);
}

TEST_CASE("coarse-graining map inverts to the constant-expectation map") {
  // F(B) = tr(sigma B) 1_m is state-preserving for any rho; its left Bayes
  // map sends A to tr(rho A) 1_n.
  Rng rng(7);
  const DensityMatrix rho = random_density(rng, 2);
  const DensityMatrix sigma = random_density(rng, 3);
  SuperOperator f =
      from_action(3, 2, [&](const ComplexMatrix &b) -> ComplexMatrix {
        return (sigma.matrix * b).trace() * ComplexMatrix::Identity(2, 2);
      });
  const BayesInput in = make_bayes_input(std::move(f), rho, sigma);
  const SuperOperator left = bayes_left(in);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const ComplexMatrix unit = matrix_unit(2, r, c);
      const Complex omega = (rho.matrix * unit).trace();
      check_close(left.apply(unit),
                  ComplexMatrix(omega * ComplexMatrix::Identity(3, 3)), 1e-12);
    }
}

TEST_CASE("left and right Bayes identities hold on all unit pairs") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    const int m = 2 + (trial / 2) % 2;
    const SuperOperator f = random_cpu_map(rng, n, m, 2 + trial % 2);
    const BayesInput in = transported_input(f, random_density(rng, m));
    const SuperOperator left = bayes_left(in);
    const SuperOperator right = bayes_right(in);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const ComplexMatrix a = matrix_unit(m, i, j);
            const ComplexMatrix b = matrix_unit(n, k, l);
            const Complex left_lhs =
                (in.sigma.matrix * left.apply(a) * b).trace();
            const Complex left_rhs =
                (in.rho.matrix * a * in.f.apply(b)).trace();
            CHECK(std::abs(left_lhs - left_rhs) < 1e-10);
            const Complex right_lhs =
                (in.sigma.matrix * b * right.apply(a)).trace();
            const Complex right_rhs =
                (in.rho.matrix * in.f.apply(b) * a).trace();
            CHECK(std::abs(right_lhs - right_rhs) < 1e-10);
          }
  }
}

TEST_CASE("Bayes maps are state-preserving back and unital") {
  Rng rng(13);
  for (int trial = 0; trial < 6; ++trial) {
    const SuperOperator f = random_cpu_map(rng, 2, 3, 2);
    const BayesInput in = transported_input(f, random_density(rng, 3));
    for (const SuperOperator &rev :
         {bayes_left(in), bayes_right(in), bayes_star(in)}) {
      check_close(rev.apply(ComplexMatrix::Identity(3, 3)),
                  ComplexMatrix::Identity(2, 2), 1e-12);
      // tr(rho A) = tr(sigma rev(A)) on all units.
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          const ComplexMatrix a = matrix_unit(3, r, c);
          CHECK(std::abs((in.rho.matrix * a).trace() -
                         (in.sigma.matrix * rev.apply(a)).trace()) < 1e-11);
        }
    }
  }
}

TEST_CASE("right Bayes map is the dagger conjugate of the left one") {
  Rng rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const SuperOperator f = random_cpu_map(rng, 2, 2, 2);
    const BayesInput in = transported_input(f, random_density(rng, 2));
    const SuperOperator left = bayes_left(in);
    const SuperOperator right = bayes_right(in);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        const ComplexMatrix a = matrix_unit(2, r, c);
        check_close(right.apply(a),
                    dagger(left.apply(dagger(a))), 1e-11);
      }
  }
}

TEST_CASE("family: left equals right only at p = 1/2, star bridges them") {
  const BayesInput balanced = family_input(0.5);
  const SuperOperator l_half = bayes_left(balanced);
  const SuperOperator r_half = bayes_right(balanced);
  const SuperOperator s_half = bayes_star(balanced);
  check_close(l_half.rep, r_half.rep, 1e-10);
  check_close(s_half.rep, l_half.rep, 1e-10);

  const BayesInput skewed = family_input(0.3);
  CHECK(max_abs_diff(bayes_left(skewed).rep, bayes_right(skewed).rep) > 1e-6);
}

TEST_CASE("star form of a CPU map is star-preserving and CP") {
  Rng rng(19);
  for (int trial = 0; trial < 6; ++trial) {
    const SuperOperator f = random_cpu_map(rng, 2, 3, 2 + trial % 2);
    const BayesInput in = transported_input(f, random_density(rng, 3));
    const MapReport report = analyze(bayes_star(in), 200, trial);
    CHECK(report.unital);
    CHECK(report.star_preserving);
    CHECK(report.completely_positive);
  }
}

TEST_CASE("classical oracle: left Bayes map equals brute-force inversion") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int x_size = 2 + trial % 2; // X marginal (rho side)
    const int y_size = 2 + (trial / 2) % 2;

    // Random strictly positive pmf p on X, column-stochastic T (p(y|x)).
    RealVector prior(x_size);
    for (int i = 0; i < x_size; ++i)
      prior[i] = 0.05 + rng.uniform();
    prior /= prior.sum();
    RealMatrix channel(y_size, x_size);
    for (int x = 0; x < x_size; ++x) {
      double col = 0.0;
      for (int y = 0; y < y_size; ++y) {
        channel(y, x) = 0.05 + rng.uniform();
        col += channel(y, x);
      }
      channel.col(x) /= col;
    }
    RealVector marginal = channel * prior; // q(y)

    // Diagonal embedding of the Heisenberg-picture channel.
    SuperOperator f = from_action(
        y_size, x_size, [&](const ComplexMatrix &b) -> ComplexMatrix {
          ComplexMatrix out = ComplexMatrix::Zero(x_size, x_size);
          for (int x = 0; x < x_size; ++x)
            for (int y = 0; y < y_size; ++y)
              out(x, x) += channel(y, x) * b(y, y);
          return out;
        });
    ComplexMatrix rho = ComplexMatrix::Zero(x_size, x_size);
    rho.diagonal() = prior.cast<Complex>();
    ComplexMatrix sigma = ComplexMatrix::Zero(y_size, y_size);
    sigma.diagonal() = marginal.cast<Complex>();
    const BayesInput in = make_bayes_input(std::move(f), DensityMatrix(rho),
                                           DensityMatrix(sigma));

    const SuperOperator left = bayes_left(in);
    for (int x = 0; x < x_size; ++x) {
      const ComplexMatrix image = left.apply(matrix_unit(x_size, x, x));
      for (int y = 0; y < y_size; ++y) {
        const double posterior = channel(y, x) * prior[x] / marginal[y];
        CHECK(std::abs(image(y, y) - Complex(posterior, 0)) < 1e-12);
      }
    }
  }
}
