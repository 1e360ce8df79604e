// Command-line front end: loads matrices or bundled scenarios, runs the
// conditional/positivity/recovery analyses, and emits machine-readable
// reports. Exit codes: 0 success, 2 validation failure, 64 usage error,
// 66 unreadable file or schema violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qcond/bayes.hpp"
#include "qcond/conditionals.hpp"
#include "qcond/io.hpp"
#include "qcond/positivity.hpp"
#include "qcond/recovery.hpp"
#include "qcond/scenarios.hpp"

namespace {

using nlohmann::json;
using namespace qcond;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string joint_file;
  std::string scenario;
  std::string direction = "B"; // condition: which factor the map conditions on
  std::string infer_direction = "A"; // infer: evidence side
  std::string evidence_file;
  std::string method = "all";
  std::string map_file, rho_file, sigma_file;
  std::string variant = "star";
  std::string out_file;
  std::string format = "json";
  int probes = 2000;
  std::uint64_t seed = 42;
  double faithful_tol = tol::faithful_rel;
};

json input_descriptor(const Options &opt, const JointState &s) {
  json in;
  if (!opt.scenario.empty())
    in["scenario"] = opt.scenario;
  if (!opt.joint_file.empty())
    in["joint_file"] = opt.joint_file;
  in["dimA"] = s.dim_a;
  in["dimB"] = s.dim_b;
  in["faithful_a"] = s.faithful_a;
  in["faithful_b"] = s.faithful_b;
  return in;
}

json report_envelope(const std::string &command, const Options &opt) {
  json report;
  report["tool"] = kToolName;
  report["version"] = kToolVersion;
  report["command"] = command;
  report["seed"] = opt.seed;
  report["probes"] = opt.probes;
  report["tolerances"] = tolerances_to_json();
  report["tolerances"]["faithful_rel"] = opt.faithful_tol;
  return report;
}

JointState load_state(const Options &opt) {
  if (opt.scenario.empty() && opt.joint_file.empty())
    throw UsageError("provide --joint FILE or --scenario NAME");
  if (!opt.scenario.empty()) {
    ScenarioSpec spec = scenario_by_name(opt.scenario);
    if (opt.faithful_tol != tol::faithful_rel)
      return make_joint(spec.state.nu.matrix, spec.state.dim_a,
                        spec.state.dim_b, opt.faithful_tol);
    return spec.state;
  }
  return load_joint_file(opt.joint_file, opt.faithful_tol);
}

DensityMatrix load_evidence(const Options &opt) {
  if (opt.evidence_file.empty())
    throw UsageError("provide --evidence FILE");
  return DensityMatrix(load_matrix_file(opt.evidence_file));
}

void emit(const json &report, const Options &opt, const std::string &pretty) {
  const std::string text =
      opt.format == "pretty" ? pretty : report.dump(2) + "\n";
  if (opt.out_file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_file);
  if (!out)
    throw SchemaError("cannot open output file: " + opt.out_file);
  out << text;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string matrix_line(const ComplexMatrix &m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << (r == 0 ? "[" : " [");
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      os << z.real();
      if (std::abs(z.imag()) > 0)
        os << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
      if (c + 1 < m.cols())
        os << ", ";
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string describe_map_report(const MapReport &r) {
  std::ostringstream os;
  os << "unital=" << yesno(r.unital) << " star=" << yesno(r.star_preserving)
     << " CP=" << yesno(r.completely_positive)
     << " choi_min=" << r.choi_min_eigenvalue << " probe_counterexample="
     << yesno(r.positivity_counterexample.has_value());
  return os.str();
}

std::string describe_subspace(const OperatorSubspace &s) {
  std::ostringstream os;
  os << "dim=" << s.dimension() << " identity=" << yesno(s.contains_identity)
     << " dagger=" << yesno(s.closed_under_dagger)
     << " multiplication=" << yesno(s.closed_under_multiplication);
  return os.str();
}

int run_scenario(const Options &opt, const std::string &positional) {
  Options local = opt;
  if (!positional.empty())
    local.scenario = positional;
  if (local.scenario.empty())
    throw UsageError("scenario: provide a name, e.g. epr or family:p=0.3");
  const ScenarioSpec spec = scenario_by_name(local.scenario);
  const json fixture = joint_to_json(spec.state);

  std::ostringstream pretty;
  pretty << "scenario " << spec.name;
  for (const auto &[k, v] : spec.params)
    pretty << " " << k << "=" << v;
  pretty << "\n  dims: " << spec.state.dim_a << " x " << spec.state.dim_b
         << ", faithful A=" << yesno(spec.state.faithful_a)
         << " B=" << yesno(spec.state.faithful_b) << "\n  rho:   "
         << matrix_line(spec.state.rho.matrix) << "\n  sigma: "
         << matrix_line(spec.state.sigma.matrix) << "\n";
  emit(fixture, local, pretty.str());
  return 0;
}

int run_condition(const Options &opt) {
  const JointState s = load_state(opt);
  const ConditionalPair pair = build_conditionals(s);
  const bool toward_a = opt.direction == "B";
  const SuperOperator &cond = toward_a ? pair.onto_a : pair.onto_b;
  const SuperOperator &dual = toward_a ? pair.infer_a_to_b : pair.infer_b_to_a;
  const MapReport report = analyze(cond, opt.probes, opt.seed);

  json out = report_envelope("condition", opt);
  out["input"] = input_descriptor(opt, s);
  out["direction"] = opt.direction;
  out["conditional"] = superop_to_json(cond);
  out["conditional_dual"] = superop_to_json(dual);
  out["classification"] = map_report_to_json(report);

  std::ostringstream pretty;
  pretty << "conditional given " << opt.direction << "-side observables ("
         << cond.dim_in << " -> " << cond.dim_out << ")\n  "
         << describe_map_report(report) << "\n";
  emit(out, opt, pretty.str());
  return 0;
}

int run_analyze(const Options &opt) {
  const JointState s = load_state(opt);
  const ConditionalPair pair = build_conditionals(s);
  const MapReport report_a = analyze(pair.onto_a, opt.probes, opt.seed);
  const MapReport report_b = analyze(pair.onto_b, opt.probes, opt.seed);
  const CriteriaReport crit_a = star_criteria(s, Side::A);
  const CriteriaReport crit_b = star_criteria(s, Side::B);
  const PositiveConditionalDecision dec_a =
      decide_positive_conditional(s, Side::A, 500, opt.seed);
  const PositiveConditionalDecision dec_b =
      decide_positive_conditional(s, Side::B, 500, opt.seed);
  const OperatorSubspace comm_a = commutant(s.rho);
  const OperatorSubspace comm_b = commutant(s.sigma);
  const OperatorSubspace dom_a = conditional_domain(s, Side::A);
  const OperatorSubspace dom_b = conditional_domain(s, Side::B);
  const SuperOperator petz = petz_conditional(s);
  const MapReport report_petz = analyze(petz, opt.probes, opt.seed);

  json out = report_envelope("analyze", opt);
  out["input"] = input_descriptor(opt, s);
  out["maps"] = json{
      {"conditional_onto_a",
       json{{"map", superop_to_json(pair.onto_a)},
            {"classification", map_report_to_json(report_a)}}},
      {"conditional_onto_b",
       json{{"map", superop_to_json(pair.onto_b)},
            {"classification", map_report_to_json(report_b)}}},
      {"petz", json{{"map", superop_to_json(petz)},
                    {"classification", map_report_to_json(report_petz)}}}};
  out["criteria"] = json{{"A", criteria_to_json(crit_a)},
                         {"B", criteria_to_json(crit_b)}};
  const auto decision_json = [](const PositiveConditionalDecision &d) {
    json j{{"positive", d.positive},
           {"certificate_verified", d.certificate.has_value()}};
    if (d.star_violation_unit.has_value())
      j["star_violation_unit"] = json::array(
          {d.star_violation_unit->first, d.star_violation_unit->second});
    return j;
  };
  out["positive_conditional"] =
      json{{"A", decision_json(dec_a)}, {"B", decision_json(dec_b)}};
  out["commutants"] = json{{"A", subspace_to_json(comm_a)},
                           {"B", subspace_to_json(comm_b)}};
  out["domains"] = json{{"A", subspace_to_json(dom_a)},
                        {"B", subspace_to_json(dom_b)}};

  std::ostringstream pretty;
  pretty << "analysis of "
         << (opt.scenario.empty() ? opt.joint_file : opt.scenario) << " (dims "
         << s.dim_a << " x " << s.dim_b << ")\n"
         << "  conditional onto A: " << describe_map_report(report_a) << "\n"
         << "  conditional onto B: " << describe_map_report(report_b) << "\n"
         << "  petz:               " << describe_map_report(report_petz)
         << "\n"
         << "  criteria A: exists=" << yesno(crit_a.star_preserving_exists)
         << " (max commutator " << crit_a.max_commutator_norm << ")\n"
         << "  criteria B: exists=" << yesno(crit_b.star_preserving_exists)
         << " (max commutator " << crit_b.max_commutator_norm << ")\n"
         << "  positive conditional A: " << yesno(dec_a.positive)
         << ", B: " << yesno(dec_b.positive) << "\n"
         << "  commutant A: " << describe_subspace(comm_a) << "\n"
         << "  commutant B: " << describe_subspace(comm_b) << "\n"
         << "  domain A:    " << describe_subspace(dom_a) << "\n"
         << "  domain B:    " << describe_subspace(dom_b) << "\n";
  emit(out, opt, pretty.str());
  return 0;
}

int run_bayes(const Options &opt) {
  if (opt.map_file.empty() || opt.rho_file.empty() || opt.sigma_file.empty())
    throw UsageError("bayes requires --map, --rho, and --sigma files");
  SuperOperator f = load_superop_file(opt.map_file);
  DensityMatrix rho(load_matrix_file(opt.rho_file));
  DensityMatrix sigma(load_matrix_file(opt.sigma_file));
  const BayesInput in =
      make_bayes_input(std::move(f), std::move(rho), std::move(sigma));

  json out = report_envelope("bayes", opt);
  out["input"] = json{{"map_file", opt.map_file},
                      {"rho_file", opt.rho_file},
                      {"sigma_file", opt.sigma_file},
                      {"variant", opt.variant}};
  std::ostringstream pretty;
  pretty << "Bayes inversion of " << opt.map_file << "\n";
  const auto add = [&](const std::string &name, const SuperOperator &map) {
    const MapReport report = analyze(map, opt.probes, opt.seed);
    out["maps"][name] = json{{"map", superop_to_json(map)},
                             {"classification", map_report_to_json(report)}};
    pretty << "  " << name << ": " << describe_map_report(report) << "\n";
  };
  if (opt.variant == "left" || opt.variant == "all")
    add("left", bayes_left(in));
  if (opt.variant == "right" || opt.variant == "all")
    add("right", bayes_right(in));
  if (opt.variant == "star" || opt.variant == "all")
    add("star", bayes_star(in));
  emit(out, opt, pretty.str());
  return 0;
}

json inference_result_json(const ComplexMatrix &state) {
  const double min_eig = min_hermitian_eigenvalue(state);
  return json{{"state", matrix_to_json(state)},
              {"min_eigenvalue", min_eig},
              {"hermitian", is_hermitian(state)},
              {"psd",
               is_hermitian(state, 1e-9) && min_eig >= -tol::probe_violation}};
}

int run_infer(const Options &opt) {
  const JointState s = load_state(opt);
  const DensityMatrix evidence = load_evidence(opt);
  const bool a_to_b = opt.infer_direction == "A";
  if (!(opt.method == "conditional" || opt.method == "petz" ||
        opt.method == "ls" || opt.method == "all"))
    throw UsageError("unknown method '" + opt.method +
                     "' (conditional|petz|ls|all)");

  // Petz and belief propagation are stated for A-side evidence; B-side
  // evidence is served by the factor-swapped state (mirror formulas). The
  // conditional path keeps the original state's dual.
  const ConditionalPair pair = build_conditionals(s);

  json out = report_envelope("infer", opt);
  out["input"] = input_descriptor(opt, s);
  out["direction"] = a_to_b ? "A->B" : "B->A";
  out["evidence"] = matrix_to_json(evidence.matrix);

  std::ostringstream pretty;
  pretty << "inference " << (a_to_b ? "A->B" : "B->A") << "\n";
  std::optional<ComplexMatrix> out_cond, out_petz, out_ls;
  if (opt.method == "conditional" || opt.method == "all") {
    const InferenceResult r =
        infer(pair, evidence, a_to_b ? Direction::AtoB : Direction::BtoA);
    out_cond = r.state;
    out["results"]["conditional"] = inference_result_json(r.state);
    pretty << "  conditional: " << matrix_line(r.state)
           << "  min_eig=" << r.min_eigenvalue << "\n";
  }
  if (opt.method == "petz" || opt.method == "ls" || opt.method == "all") {
    const JointState mirrored = a_to_b ? s : swap_factors(s);
    if (opt.method != "ls") {
      const ComplexMatrix r =
          hs_dual(petz_conditional(mirrored)).apply(evidence.matrix);
      out_petz = r;
      out["results"]["petz"] = inference_result_json(r);
      pretty << "  petz:        " << matrix_line(r) << "\n";
    }
    if (opt.method != "petz") {
      const ComplexMatrix r =
          ls_conditional_dual(mirrored).apply(evidence.matrix);
      out_ls = r;
      out["results"]["belief_propagation"] = inference_result_json(r);
      pretty << "  belief prop: " << matrix_line(r) << "\n";
    }
  }
  if (opt.method == "all") {
    out["distances"] =
        json{{"conditional_petz", trace_distance(*out_cond, *out_petz)},
             {"conditional_belief_propagation",
              trace_distance(*out_cond, *out_ls)},
             {"petz_belief_propagation", trace_distance(*out_petz, *out_ls)}};
  }
  emit(out, opt, pretty.str());
  return 0;
}

int run_domain(const Options &opt) {
  const JointState s = load_state(opt);
  const OperatorSubspace comm_a = commutant(s.rho);
  const OperatorSubspace comm_b = commutant(s.sigma);
  const OperatorSubspace dom_a = conditional_domain(s, Side::A);
  const OperatorSubspace dom_b = conditional_domain(s, Side::B);
  const int trials = std::max(1, opt.probes / 4);
  const bool restricted_a =
      restricted_positivity_check(s, Side::A, trials, opt.seed);
  const bool restricted_b =
      restricted_positivity_check(s, Side::B, trials, opt.seed);
  const bool dual_ok = dual_commutant_inference_check(s, trials, opt.seed);

  json out = report_envelope("domain", opt);
  out["input"] = input_descriptor(opt, s);
  out["commutants"] = json{{"A", subspace_to_json(comm_a)},
                           {"B", subspace_to_json(comm_b)}};
  out["domains"] = json{{"A", subspace_to_json(dom_a)},
                        {"B", subspace_to_json(dom_b)}};
  out["restricted_positivity"] =
      json{{"A", restricted_a}, {"B", restricted_b}, {"trials", trials}};
  out["dual_commutant_inference"] = dual_ok;

  std::ostringstream pretty;
  pretty << "operator systems of "
         << (opt.scenario.empty() ? opt.joint_file : opt.scenario) << "\n"
         << "  commutant A: " << describe_subspace(comm_a) << "\n"
         << "  commutant B: " << describe_subspace(comm_b) << "\n"
         << "  domain A:    " << describe_subspace(dom_a) << "\n"
         << "  domain B:    " << describe_subspace(dom_b) << "\n"
         << "  restricted positivity: A=" << yesno(restricted_a)
         << " B=" << yesno(restricted_b) << " (" << trials << " trials)\n"
         << "  dual commutant inference: " << yesno(dual_ok) << "\n";
  emit(out, opt, pretty.str());
  return 0;
}

int run_compare(const Options &opt) {
  const JointState s = load_state(opt);
  const DensityMatrix evidence = load_evidence(opt);
  const InferenceComparison cmp = compare_inference(s, evidence);

  json out = report_envelope("compare", opt);
  out["input"] = input_descriptor(opt, s);
  out["comparison"] = comparison_to_json(cmp);

  std::ostringstream pretty;
  pretty << "comparison (evidence on A)\n  conditional: "
         << matrix_line(cmp.out_conditional)
         << " psd=" << yesno(cmp.psd_conditional) << "\n  petz:        "
         << matrix_line(cmp.out_petz) << " psd=" << yesno(cmp.psd_petz)
         << "\n  belief prop: " << matrix_line(cmp.out_ls)
         << " psd=" << yesno(cmp.psd_ls) << "\n  distances: cond-petz="
         << cmp.dist_conditional_petz
         << " cond-bp=" << cmp.dist_conditional_ls
         << " petz-bp=" << cmp.dist_petz_ls << "\n";
  emit(out, opt, pretty.str());
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"quantum conditionals toolkit: conditionals of bipartite "
               "states, positivity criteria, operator systems, and recovery "
               "map comparisons"};
  app.require_subcommand(1);

  Options opt;
  std::string scenario_positional;

  const auto add_state_options = [&](CLI::App *sub) {
    sub->add_option("--joint", opt.joint_file,
                    "joint-state JSON file (rows/cols/data + dimA/dimB)");
    sub->add_option("--scenario", opt.scenario,
                    "bundled scenario, e.g. epr, family:p=0.3, "
                    "random:seed=7,m=2,n=2,rank=4");
  };
  const auto add_common_options = [&](CLI::App *sub) {
    sub->add_option("--seed", opt.seed, "probe seed (default 42)");
    sub->add_option("--probes", opt.probes,
                    "positivity probe count (default 2000)");
    sub->add_option("--tol", opt.faithful_tol,
                    "relative faithfulness threshold (default 1e-9)");
    sub->add_option("--out", opt.out_file, "write the report to this file");
    sub->add_option("--format", opt.format, "json (default) or pretty")
        ->check(CLI::IsMember({"json", "pretty"}));
  };

  CLI::App *cmd_condition =
      app.add_subcommand("condition", "construct the unique conditionals");
  add_state_options(cmd_condition);
  add_common_options(cmd_condition);
  cmd_condition
      ->add_option("--direction", opt.direction,
                   "which factor's observables the map conditions "
                   "(B: map onto A, the default)")
      ->check(CLI::IsMember({"A", "B"}));

  CLI::App *cmd_analyze =
      app.add_subcommand("analyze", "full positivity dossier for a state");
  add_state_options(cmd_analyze);
  add_common_options(cmd_analyze);

  CLI::App *cmd_bayes = app.add_subcommand(
      "bayes", "Bayes maps of a state-preserving unital map");
  add_common_options(cmd_bayes);
  cmd_bayes->add_option("--map", opt.map_file, "superoperator JSON file");
  cmd_bayes->add_option("--rho", opt.rho_file, "codomain state file");
  cmd_bayes->add_option("--sigma", opt.sigma_file, "domain state file");
  cmd_bayes->add_option("--variant", opt.variant, "left|right|star|all")
      ->check(CLI::IsMember({"left", "right", "star", "all"}));

  CLI::App *cmd_infer =
      app.add_subcommand("infer", "push evidence through the inference maps");
  add_state_options(cmd_infer);
  add_common_options(cmd_infer);
  cmd_infer->add_option("--evidence", opt.evidence_file,
                        "evidence density matrix file");
  cmd_infer
      ->add_option("--direction", opt.infer_direction,
                   "evidence side (default A)")
      ->check(CLI::IsMember({"A", "B"}));
  cmd_infer->add_option("--method", opt.method, "conditional|petz|ls|all");

  CLI::App *cmd_domain = app.add_subcommand(
      "domain", "commutants, conditional domains, restricted positivity");
  add_state_options(cmd_domain);
  add_common_options(cmd_domain);

  CLI::App *cmd_compare = app.add_subcommand(
      "compare", "conditional vs Petz vs belief propagation on evidence");
  add_state_options(cmd_compare);
  add_common_options(cmd_compare);
  cmd_compare->add_option("--evidence", opt.evidence_file,
                          "evidence density matrix file");

  CLI::App *cmd_scenario = app.add_subcommand(
      "scenario", "emit a bundled scenario as a joint-state fixture");
  cmd_scenario->add_option("name", scenario_positional,
                           "scenario name, e.g. epr or family:p=0.3");
  add_state_options(cmd_scenario);
  add_common_options(cmd_scenario);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << e.what() << "\n";
    return 64;
  }

  try {
    if (app.got_subcommand(cmd_condition))
      return run_condition(opt);
    if (app.got_subcommand(cmd_analyze))
      return run_analyze(opt);
    if (app.got_subcommand(cmd_bayes))
      return run_bayes(opt);
    if (app.got_subcommand(cmd_infer))
      return run_infer(opt);
    if (app.got_subcommand(cmd_domain))
      return run_domain(opt);
    if (app.got_subcommand(cmd_compare))
      return run_compare(opt);
    if (app.got_subcommand(cmd_scenario))
      return run_scenario(opt, scenario_positional);
    std::cerr << "unknown subcommand\n";
    return 64;
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const SchemaError &e) {
    std::cerr << "file error: " << e.what() << "\n";
    return 66;
  } catch (const ValidationError &e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
