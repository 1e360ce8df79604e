#include "qcond/scenarios.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "qcond/channels.hpp"
#include "qcond/rng.hpp"

namespace qcond {

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

std::array<Complex, 4> entries2(const ComplexMatrix &x) {
  return {x(0, 0), x(0, 1), x(1, 0), x(1, 1)};
}

} // namespace

ScenarioSpec epr() {
  ComplexMatrix nu = ComplexMatrix::Zero(4, 4);
  nu(1, 1) = 0.5;
  nu(1, 2) = -0.5;
  nu(2, 1) = -0.5;
  nu(2, 2) = 0.5;

  ScenarioSpec spec{"epr", {}, make_joint(nu, 2, 2), {}};

  // Closed forms: the conditional acts as [[a,b],[c,d]] -> [[d,-b],[-c,a]]
  // (for both directions), the Petz-derived map as B -> (tr B / 2) 1.
  const SuperOperator cond =
      from_action(2, 2, [](const ComplexMatrix &b) -> ComplexMatrix {
        return mat2(b(1, 1), -b(0, 1), -b(1, 0), b(0, 0));
      });
  const SuperOperator petz =
      from_action(2, 2, [](const ComplexMatrix &b) -> ComplexMatrix {
        return 0.5 * b.trace() * ComplexMatrix::Identity(2, 2);
      });
  spec.expected["F_rep"] = cond.rep;
  spec.expected["G_rep"] = cond.rep;
  spec.expected["petz_rep"] = petz.rep;
  spec.expected["infer_up_conditional"] = mat2(0, 0, 0, 1);
  spec.expected["infer_up_petz"] = mat2(0.5, 0, 0, 0.5);
  spec.expected["infer_up_ls"] = mat2(0, 0, 0, 1);
  return spec;
}

ScenarioSpec family(double p) {
  if (!(p >= 1e-6 && p <= 1.0 - 1e-6))
    throw ValidationError("family: p must lie in (0,1), away from endpoints");
  const double q = 1.0 - p;
  const double rp = std::sqrt(p / 2.0);
  const double rq = std::sqrt(q / 2.0);
  ComplexVector amplitudes(4);
  amplitudes << rp, rq, -rp, rq;
  const ComplexMatrix nu = amplitudes * amplitudes.adjoint();

  ScenarioSpec spec{"family", {{"p", p}}, make_joint(nu, 2, 2), {}};

  const double spq = std::sqrt(p * q);
  spec.expected["rho"] = mat2(0.5, 0.5 * (q - p), 0.5 * (q - p), 0.5);
  spec.expected["sigma"] = mat2(p, 0, 0, q);
  spec.expected["rho_inv"] = mat2(1.0, p - q, p - q, 1.0) / (2.0 * p * q);
  spec.expected["sigma_inv"] = mat2(1.0 / p, 0, 0, 1.0 / q);

  const SuperOperator cond_f =
      from_action(2, 2, [&](const ComplexMatrix &x) -> ComplexMatrix {
        const auto [a, b, c, d] = entries2(x);
        return 0.5 * mat2(a + d + (p * c + q * b) / spq,
                          d - a + (p * c - q * b) / spq,
                          d - a + (q * b - p * c) / spq,
                          a + d - (p * c + q * b) / spq);
      });
  const SuperOperator cond_g =
      from_action(2, 2, [&](const ComplexMatrix &x) -> ComplexMatrix {
        const auto [a, b, c, d] = entries2(x);
        return 0.5 * mat2(a - b - c + d, std::sqrt(q / p) * (a - b + c - d),
                          std::sqrt(p / q) * (a + b - c - d), a + b + c + d);
      });
  const SuperOperator dual_f =
      from_action(2, 2, [&](const ComplexMatrix &x) -> ComplexMatrix {
        const auto [a, b, c, d] = entries2(x);
        return 0.5 * mat2(a - b - c + d, std::sqrt(p / q) * (a - b + c - d),
                          std::sqrt(q / p) * (a + b - c - d), a + b + c + d);
      });
  const SuperOperator dual_g =
      from_action(2, 2, [&](const ComplexMatrix &x) -> ComplexMatrix {
        const auto [a, b, c, d] = entries2(x);
        return 0.5 * mat2(a + d + (p * b + q * c) / spq,
                          d - a + (q * c - p * b) / spq,
                          d - a + (p * b - q * c) / spq,
                          a + d - (p * b + q * c) / spq);
      });
  spec.expected["F_rep"] = cond_f.rep;
  spec.expected["G_rep"] = cond_g.rep;
  spec.expected["F_dual_rep"] = dual_f.rep;
  spec.expected["G_dual_rep"] = dual_g.rep;

  // Commutants and conditional domains (spanning sets, not orthonormal).
  spec.expected["commutant_a_span_0"] = mat2(1, 0, 0, 1);
  spec.expected["commutant_a_span_1"] = mat2(0, 1, 1, 0);
  spec.expected["commutant_b_span_0"] = mat2(1, 0, 0, 0);
  spec.expected["commutant_b_span_1"] = mat2(0, 0, 0, 1);
  spec.expected["domain_a_span_0"] = mat2(1, 0, 0, 1);
  spec.expected["domain_a_span_1"] = mat2(0, 1, 1, 0);
  spec.expected["domain_b_span_0"] = mat2(1, 0, 0, 0);
  spec.expected["domain_b_span_1"] = mat2(0, 0, 0, 1);

  // Inference fixtures: spin-up evidence lies outside the commutant of rho
  // and yields a non-orthogonal projection; |-><-| evidence lies inside and
  // every method agrees on spin-up for Bob.
  spec.expected["infer_up_conditional"] =
      0.5 * mat2(1.0, std::sqrt(p / q), std::sqrt(q / p), 1.0);
  spec.expected["infer_minus_conditional"] = mat2(1, 0, 0, 0);
  spec.expected["infer_up_ls"] = mat2(0.5, 0.5, 0.5, 0.5);
  spec.expected["infer_minus_ls"] = mat2(1, 0, 0, 0);
  return spec;
}

ScenarioSpec random_joint(std::uint64_t seed, int m, int n, int rank) {
  if (m < 2 || n < 2)
    throw ValidationError("random_joint: m and n must be >= 2");
  if (rank < 1 || rank > m * n)
    throw ValidationError("random_joint: rank must lie in [1, m*n]");
  for (int attempt = 0; attempt < 10; ++attempt) {
    Rng rng(seed, static_cast<std::uint64_t>(attempt));
    const std::vector<double> weights = rng.dirichlet(rank);
    ComplexMatrix nu = ComplexMatrix::Zero(m * n, m * n);
    for (int r = 0; r < rank; ++r) {
      const ComplexVector v = rng.unit_vector(m * n);
      nu += weights[r] * (v * v.adjoint());
    }
    nu = 0.5 * (nu + nu.adjoint());
    nu /= nu.trace().real();
    JointState state = make_joint(nu, m, n);
    if (state.faithful_a && state.faithful_b) {
      return ScenarioSpec{"random",
                          {{"seed", static_cast<double>(seed)},
                           {"m", static_cast<double>(m)},
                           {"n", static_cast<double>(n)},
                           {"rank", static_cast<double>(rank)}},
                          std::move(state),
                          {}};
    }
  }
  throw ValidationError(
      "random_joint: could not reach faithful marginals in 10 attempts "
      "(rank too low for the requested dimensions?)");
}

ScenarioSpec scenario_by_name(const std::string &descriptor) {
  std::string name = descriptor;
  std::map<std::string, double> params;
  if (const auto colon = descriptor.find(':'); colon != std::string::npos) {
    name = descriptor.substr(0, colon);
    std::stringstream rest(descriptor.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw ValidationError("scenario: malformed parameter '" + item + "'");
      try {
        params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (const std::exception &) {
        throw ValidationError("scenario: non-numeric parameter '" + item +
                              "'");
      }
    }
  }

  const auto get = [&](const std::string &key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "epr")
    return epr();
  if (name == "family") {
    if (params.find("p") == params.end())
      throw ValidationError("scenario: family requires p, e.g. family:p=0.3");
    return family(params.at("p"));
  }
  if (name == "random") {
    const int m = static_cast<int>(get("m", 2));
    const int n = static_cast<int>(get("n", 2));
    const int rank = static_cast<int>(get("rank", m * n));
    const auto seed = static_cast<std::uint64_t>(get("seed", 42));
    return random_joint(seed, m, n, rank);
  }
  throw ValidationError("scenario: unknown name '" + name +
                        "' (expected epr, family, or random)");
}

} // namespace qcond
