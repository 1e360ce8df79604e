#ifndef QCOND_IO_HPP
#define QCOND_IO_HPP

#include <string>

#include <json.hpp>

#include "qcond/channels.hpp"
#include "qcond/positivity.hpp"
#include "qcond/recovery.hpp"
#include "qcond/states.hpp"

namespace qcond {

inline constexpr const char *kToolName = "qcond";
inline constexpr const char *kToolVersion = "0.1.0";

/// Thrown for unreadable files and schema violations (CLI exit code 66).
class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Matrix files are JSON objects {"rows": r, "cols": c, "data": [[re, im],
// ...]} with row-major data; joint-state files additionally carry "dimA" and
// "dimB". Doubles round-trip bit-exactly (shortest decimal encoding); NaN
// and infinity are rejected in both directions.

nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j,
                               const std::string &context = "matrix");

nlohmann::json joint_to_json(const JointState &s);
JointState joint_from_json(const nlohmann::json &j,
                           double faithful_rel_tol = tol::faithful_rel);

nlohmann::json superop_to_json(const SuperOperator &f);
SuperOperator superop_from_json(const nlohmann::json &j);

nlohmann::json load_json_file(const std::string &path);
ComplexMatrix load_matrix_file(const std::string &path);
JointState load_joint_file(const std::string &path,
                           double faithful_rel_tol = tol::faithful_rel);
SuperOperator load_superop_file(const std::string &path);

// Report fragments shared by the CLI subcommands.
nlohmann::json map_report_to_json(const MapReport &r);
nlohmann::json criteria_to_json(const CriteriaReport &r);
nlohmann::json subspace_to_json(const OperatorSubspace &s);
nlohmann::json comparison_to_json(const InferenceComparison &c);
nlohmann::json tolerances_to_json();

} // namespace qcond

#endif
