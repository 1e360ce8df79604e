#include "qcond/bayes.hpp"

#include <string>
#include <utility>

namespace qcond {

BayesInput make_bayes_input(SuperOperator f, DensityMatrix rho,
                            DensityMatrix sigma) {
  if (rho.dim != f.dim_out || sigma.dim != f.dim_in)
    throw ValidationError("bayes: rho/sigma dimensions must match the map");
  if (!is_faithful(sigma))
    throw ValidationError("bayes: sigma must be faithful");
  double dev = 0.0;
  for (int r = 0; r < f.dim_in; ++r)
    for (int c = 0; c < f.dim_in; ++c) {
      const Complex lhs = sigma.matrix(c, r); // tr(sigma E_rc)
      const Complex rhs = (rho.matrix * unit_image(f, r, c)).trace();
      dev = std::max(dev, std::abs(lhs - rhs));
    }
  if (dev > tol::state_preserving)
    throw ValidationError(
        "bayes: state preservation violated, max unit deviation " +
        std::to_string(dev));
  return BayesInput{std::move(f), std::move(rho), std::move(sigma)};
}

SuperOperator bayes_left(const BayesInput &in) {
  const SuperOperator dual = hs_dual(in.f);
  const ComplexMatrix sigma_inv = matrix_inv(in.sigma.matrix);
  const ComplexMatrix &rho = in.rho.matrix;
  return from_action(in.f.dim_out, in.f.dim_in,
                     [&](const ComplexMatrix &a) -> ComplexMatrix {
                       return sigma_inv * dual.apply(rho * a);
                     });
}

SuperOperator bayes_right(const BayesInput &in) {
  const SuperOperator dual = hs_dual(in.f);
  const ComplexMatrix sigma_inv = matrix_inv(in.sigma.matrix);
  const ComplexMatrix &rho = in.rho.matrix;
  return from_action(in.f.dim_out, in.f.dim_in,
                     [&](const ComplexMatrix &a) -> ComplexMatrix {
                       return dual.apply(a * rho) * sigma_inv;
                     });
}

SuperOperator bayes_star(const BayesInput &in) {
  const SuperOperator dual = hs_dual(in.f);
  const ComplexMatrix sigma_inv_sqrt = matrix_inv_sqrt(in.sigma.matrix);
  const ComplexMatrix rho_sqrt = matrix_sqrt(in.rho.matrix);
  return from_action(
      in.f.dim_out, in.f.dim_in,
      [&](const ComplexMatrix &a) -> ComplexMatrix {
        const ComplexMatrix mid = dual.apply(rho_sqrt * a * rho_sqrt);
        return sigma_inv_sqrt * mid * sigma_inv_sqrt;
      });
}

} // namespace qcond
