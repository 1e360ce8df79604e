#include "qcond/channels.hpp"

#include "qcond/rng.hpp"

namespace qcond {

ComplexVector vec(const ComplexMatrix &m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector &v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw ValidationError("unvec: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

SuperOperator from_action(
    int dim_in, int dim_out,
    const std::function<ComplexMatrix(const ComplexMatrix &)> &action) {
  if (dim_in < 1 || dim_out < 1)
    throw ValidationError("from_action: dimensions must be positive");
  SuperOperator f;
  f.dim_in = dim_in;
  f.dim_out = dim_out;
  f.rep = ComplexMatrix(dim_out * dim_out, dim_in * dim_in);
  for (int c = 0; c < dim_in; ++c)
    for (int r = 0; r < dim_in; ++r) {
      const ComplexMatrix image = action(matrix_unit(dim_in, r, c));
      if (image.rows() != dim_out || image.cols() != dim_out)
        throw ValidationError("from_action: action returned wrong shape");
      f.rep.col(c * dim_in + r) = vec(image);
    }
  return f;
}

SuperOperator identity_map(int dim) {
  SuperOperator f;
  f.dim_in = dim;
  f.dim_out = dim;
  f.rep = ComplexMatrix::Identity(dim * dim, dim * dim);
  return f;
}

SuperOperator ad_map(const ComplexMatrix &a) {
  if (a.rows() != a.cols())
    throw ValidationError("ad_map: matrix must be square");
  const int d = static_cast<int>(a.rows());
  return from_action(d, d, [&](const ComplexMatrix &c) -> ComplexMatrix {
    return a * c * a.adjoint();
  });
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix &b) const {
  if (b.rows() != dim_in || b.cols() != dim_in)
    throw ValidationError("apply: input dimension mismatch");
  return unvec(rep * vec(b), dim_out, dim_out);
}

ComplexMatrix unit_image(const SuperOperator &f, int r, int c) {
  return unvec(f.rep.col(c * f.dim_in + r), f.dim_out, f.dim_out);
}

SuperOperator hs_dual(const SuperOperator &f) {
  const int m = f.dim_out;
  const int n = f.dim_in;
  // F*(A)_{kl} = tr(A F(E_lk)); pre-read all unit images once.
  std::vector<ComplexMatrix> images(n * n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      images[c * n + r] = unit_image(f, r, c);
  return from_action(m, n, [&](const ComplexMatrix &a) -> ComplexMatrix {
    ComplexMatrix out(n, n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        out(k, l) = (a * images[k * n + l]).trace();
    return out;
  });
}

SuperOperator compose(const SuperOperator &f, const SuperOperator &g) {
  if (f.dim_in != g.dim_out)
    throw ValidationError("compose: dimension mismatch");
  SuperOperator h;
  h.dim_in = g.dim_in;
  h.dim_out = f.dim_out;
  h.rep = f.rep * g.rep;
  return h;
}

ComplexMatrix choi(const SuperOperator &f) {
  const int m = f.dim_out;
  const int n = f.dim_in;
  ComplexMatrix c = ComplexMatrix::Zero(n * m, n * m);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      c.block(k * m, l * m, m, m) = unit_image(f, k, l);
  return c;
}

MapReport analyze(const SuperOperator &f, int probes, std::uint64_t seed) {
  if (probes < 1)
    throw ValidationError("analyze: probes must be >= 1");
  MapReport report;

  const ComplexMatrix id_out =
      ComplexMatrix::Identity(f.dim_out, f.dim_out);
  report.unital =
      max_abs_diff(f.apply(ComplexMatrix::Identity(f.dim_in, f.dim_in)),
                   id_out) <= tol::unital;

  double star_dev = 0.0;
  for (int r = 0; r < f.dim_in; ++r)
    for (int c = 0; c < f.dim_in; ++c)
      star_dev = std::max(star_dev,
                          max_abs_diff(unit_image(f, r, c).adjoint(),
                                       unit_image(f, c, r)));
  report.star_preserving = star_dev <= tol::star_preserving;

  const ComplexMatrix ch = choi(f);
  report.choi_hermitian = is_hermitian(ch);
  report.choi_min_eigenvalue = min_hermitian_eigenvalue(ch);
  report.completely_positive =
      report.choi_hermitian && report.choi_min_eigenvalue >= -tol::choi_psd;

  for (int i = 0; i < probes; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const ComplexVector v = rng.unit_vector(f.dim_in);
    const ComplexMatrix out = f.apply(v * v.adjoint());
    report.probe_samples = i + 1;
    if (min_hermitian_eigenvalue(out) < -tol::probe_violation) {
      report.positivity_counterexample = v;
      break;
    }
  }
  return report;
}

} // namespace qcond
