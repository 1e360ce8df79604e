#include "qcond/io.hpp"

#include <cmath>
#include <fstream>

namespace qcond {

using nlohmann::json;

namespace {

void require_finite(double x, const std::string &context) {
  if (!std::isfinite(x))
    throw SchemaError(context + ": non-finite number");
}

json complex_to_json(const Complex &z, const std::string &context) {
  require_finite(z.real(), context);
  require_finite(z.imag(), context);
  return json::array({z.real(), z.imag()});
}

int require_positive_int(const json &j, const std::string &key,
                         const std::string &context) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw SchemaError(context + ": missing integer field '" + key + "'");
  const int v = j[key].get<int>();
  if (v < 1)
    throw SchemaError(context + ": field '" + key + "' must be positive");
  return v;
}

} // namespace

json matrix_to_json(const ComplexMatrix &m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back(complex_to_json(m(r, c), "matrix entry"));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

ComplexMatrix matrix_from_json(const json &j, const std::string &context) {
  if (!j.is_object())
    throw SchemaError(context + ": expected an object");
  const int rows = require_positive_int(j, "rows", context);
  const int cols = require_positive_int(j, "cols", context);
  if (!j.contains("data") || !j["data"].is_array())
    throw SchemaError(context + ": missing array field 'data'");
  const json &data = j["data"];
  if (data.size() != static_cast<std::size_t>(rows) * cols)
    throw SchemaError(context + ": data length " +
                      std::to_string(data.size()) + " != rows*cols = " +
                      std::to_string(static_cast<long>(rows) * cols));
  ComplexMatrix m(rows, cols);
  std::size_t idx = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c, ++idx) {
      const json &entry = data[idx];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number())
        throw SchemaError(context + ": data[" + std::to_string(idx) +
                          "] must be a [re, im] pair");
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw SchemaError(context + ": data[" + std::to_string(idx) +
                          "] is not finite");
      m(r, c) = Complex(re, im);
    }
  return m;
}

json joint_to_json(const JointState &s) {
  json j = matrix_to_json(s.nu.matrix);
  j["dimA"] = s.dim_a;
  j["dimB"] = s.dim_b;
  return j;
}

JointState joint_from_json(const json &j, double faithful_rel_tol) {
  const int dim_a = require_positive_int(j, "dimA", "joint state");
  const int dim_b = require_positive_int(j, "dimB", "joint state");
  const ComplexMatrix nu = matrix_from_json(j, "joint state");
  return make_joint(nu, dim_a, dim_b, faithful_rel_tol);
}

json superop_to_json(const SuperOperator &f) {
  return json{{"dim_in", f.dim_in},
              {"dim_out", f.dim_out},
              {"rep", matrix_to_json(f.rep)}};
}

SuperOperator superop_from_json(const json &j) {
  SuperOperator f;
  f.dim_in = require_positive_int(j, "dim_in", "superoperator");
  f.dim_out = require_positive_int(j, "dim_out", "superoperator");
  if (!j.contains("rep"))
    throw SchemaError("superoperator: missing field 'rep'");
  f.rep = matrix_from_json(j["rep"], "superoperator rep");
  if (f.rep.rows() != static_cast<Eigen::Index>(f.dim_out) * f.dim_out ||
      f.rep.cols() != static_cast<Eigen::Index>(f.dim_in) * f.dim_in)
    throw SchemaError("superoperator: rep shape does not match dims");
  return f;
}

json load_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw SchemaError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw SchemaError("parse error in " + path + ": " + e.what());
  }
  return j;
}

ComplexMatrix load_matrix_file(const std::string &path) {
  return matrix_from_json(load_json_file(path), path);
}

JointState load_joint_file(const std::string &path, double faithful_rel_tol) {
  return joint_from_json(load_json_file(path), faithful_rel_tol);
}

SuperOperator load_superop_file(const std::string &path) {
  return superop_from_json(load_json_file(path));
}

json map_report_to_json(const MapReport &r) {
  json j{{"unital", r.unital},
         {"star_preserving", r.star_preserving},
         {"completely_positive", r.completely_positive},
         {"choi_min_eigenvalue", r.choi_min_eigenvalue},
         {"choi_hermitian", r.choi_hermitian},
         {"probe_samples", r.probe_samples}};
  if (r.positivity_counterexample.has_value()) {
    const ComplexVector &v = *r.positivity_counterexample;
    j["positivity_counterexample"] =
        matrix_to_json(ComplexMatrix(v));
  } else {
    j["positivity_counterexample"] = nullptr;
  }
  return j;
}

json criteria_to_json(const CriteriaReport &r) {
  json residuals = json::array();
  for (const auto &[t, dev] : r.modular_check_residuals)
    residuals.push_back(json{{"t", t}, {"residual", dev}});
  return json{{"side", r.side == Side::A ? "A" : "B"},
              {"star_preserving_exists", r.star_preserving_exists},
              {"max_commutator_norm", r.max_commutator_norm},
              {"modular_check_residuals", residuals}};
}

json subspace_to_json(const OperatorSubspace &s) {
  json basis = json::array();
  for (const ComplexMatrix &b : s.basis)
    basis.push_back(matrix_to_json(b));
  return json{{"ambient_dim", s.ambient_dim},
              {"dimension", s.dimension()},
              {"contains_identity", s.contains_identity},
              {"closed_under_dagger", s.closed_under_dagger},
              {"closed_under_multiplication", s.closed_under_multiplication},
              {"operator_system", s.operator_system()},
              {"basis", basis}};
}

json comparison_to_json(const InferenceComparison &c) {
  return json{{"evidence", matrix_to_json(c.evidence)},
              {"conditional", matrix_to_json(c.out_conditional)},
              {"petz", matrix_to_json(c.out_petz)},
              {"belief_propagation", matrix_to_json(c.out_ls)},
              {"distances",
               json{{"conditional_petz", c.dist_conditional_petz},
                    {"conditional_belief_propagation", c.dist_conditional_ls},
                    {"petz_belief_propagation", c.dist_petz_ls}}},
              {"psd",
               json{{"conditional", c.psd_conditional},
                    {"petz", c.psd_petz},
                    {"belief_propagation", c.psd_ls}}}};
}

json tolerances_to_json() {
  return json{{"hermitian", tol::hermitian},
              {"trace_one", tol::trace_one},
              {"psd", tol::psd},
              {"nullspace_rel", tol::nullspace_rel},
              {"faithful_rel", tol::faithful_rel},
              {"choi_psd", tol::choi_psd},
              {"unital", tol::unital},
              {"star_preserving", tol::star_preserving},
              {"state_preserving", tol::state_preserving},
              {"commutator_verdict", tol::commutator_verdict},
              {"modular_residual", tol::modular_residual},
              {"closure_residual", tol::closure_residual},
              {"probe_violation", tol::probe_violation}};
}

} // namespace qcond
