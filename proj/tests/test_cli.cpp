#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "qcond/io.hpp"
#include "qcond/scenarios.hpp"

using namespace qcond;
using nlohmann::json;
using qtest::check_close;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI binary with stderr folded into stdout.
RunResult run_cli(const std::string &args) {
  const std::string command = std::string(QCOND_CLI_PATH) + " " + args + " 2>&1";
  RunResult result;
  FILE *pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "qcond_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string &name, const std::string &content) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << content;
  return path.string();
}

std::string write_json(const std::string &name, const json &j) {
  return write_file(name, j.dump(2) + "\n");
}

} // namespace

TEST_CASE("analyze --scenario epr reports the headline facts") {
  const RunResult r = run_cli("analyze --scenario epr");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.output);
  CHECK(report["criteria"]["A"]["star_preserving_exists"] == true);
  CHECK(report["criteria"]["B"]["star_preserving_exists"] == true);
  CHECK(report["maps"]["conditional_onto_a"]["classification"]
              ["completely_positive"] == false);
  CHECK(report["maps"]["conditional_onto_a"]["classification"]
              ["star_preserving"] == true);
  CHECK(report["maps"]["petz"]["classification"]["completely_positive"] ==
        true);
  CHECK(report["positive_conditional"]["A"]["positive"] == true);
  CHECK(report["domains"]["A"]["dimension"] == 4);
  CHECK(report["domains"]["B"]["dimension"] == 4);
  CHECK(report["seed"] == 42);
  CHECK(report["tolerances"].contains("commutator_verdict"));
}

TEST_CASE("infer on the family: conditional non-PSD, belief propagation |+><+|") {
  const std::string up = write_json(
      "up.json", matrix_to_json(ComplexMatrix(matrix_unit(2, 0, 0))));
  const RunResult r = run_cli("infer --scenario family:p=0.3 --evidence " +
                              up + " --method all");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.output);
  CHECK(report["results"]["conditional"]["psd"] == false);
  CHECK(report["results"]["petz"]["psd"] == true);
  CHECK(report["results"]["belief_propagation"]["psd"] == true);
  const ComplexMatrix ls =
      matrix_from_json(report["results"]["belief_propagation"]["state"]);
  check_close(ls, qtest::mat2(0.5, 0.5, 0.5, 0.5), 1e-10);
  CHECK(report["distances"]["conditional_belief_propagation"] > 0.1);
}

TEST_CASE("condition on a product state encodes the expectation map") {
  const ComplexMatrix rho0 = qtest::mat2(0.7, 0, 0, 0.3);
  const ComplexMatrix sigma0 = qtest::mat2(0.6, 0.2, 0.2, 0.4);
  json fixture = matrix_to_json(kron(rho0, sigma0));
  fixture["dimA"] = 2;
  fixture["dimB"] = 2;
  const std::string joint = write_json("product.json", fixture);

  const RunResult r = run_cli("condition --joint " + joint + " --direction B");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.output);
  const SuperOperator cond = superop_from_json(report["conditional"]);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const ComplexMatrix b = matrix_unit(2, i, j);
      const Complex xi = (sigma0 * b).trace();
      check_close(cond.apply(b),
                  ComplexMatrix(xi * ComplexMatrix::Identity(2, 2)), 1e-12);
    }
  CHECK(report["classification"]["completely_positive"] == true);
}

TEST_CASE("scenario emits a fixture that feeds back into --joint") {
  const auto out = (scratch_dir() / "epr.json").string();
  const RunResult r = run_cli("scenario epr --out " + out);
  REQUIRE(r.exit_code == 0);
  const RunResult reuse = run_cli("analyze --joint " + out);
  REQUIRE(reuse.exit_code == 0);
  const json report = json::parse(reuse.output);
  CHECK(report["positive_conditional"]["A"]["positive"] == true);
}

TEST_CASE("reports are byte-identical across reruns with a fixed seed") {
  const RunResult first = run_cli("analyze --scenario family:p=0.3 --seed 7");
  const RunResult second = run_cli("analyze --scenario family:p=0.3 --seed 7");
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);

  const RunResult other = run_cli("analyze --scenario family:p=0.3 --seed 8");
  CHECK(other.output != first.output); // the recorded seed differs
}

TEST_CASE("exit codes: usage 64, unreadable/schema 66, validation 2") {
  CHECK(run_cli("frobnicate").exit_code == 64);
  CHECK(run_cli("").exit_code == 64);
  CHECK(run_cli("analyze --scenario epr --format yaml").exit_code == 64);
  CHECK(run_cli("infer --scenario epr").exit_code == 64); // missing evidence

  CHECK(run_cli("analyze --joint /nonexistent.json").exit_code == 66);
  const std::string broken = write_file("broken.json", "{");
  CHECK(run_cli("analyze --joint " + broken).exit_code == 66);
  const std::string short_data = write_file(
      "short.json", R"({"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0]]})");
  CHECK(run_cli("analyze --joint " + short_data).exit_code == 66);

  // Valid schema but not a density matrix: validation failure.
  json not_density = matrix_to_json(ComplexMatrix::Identity(4, 4));
  not_density["dimA"] = 2;
  not_density["dimB"] = 2;
  const std::string bad_state = write_json("not_density.json", not_density);
  const RunResult vr = run_cli("condition --joint " + bad_state);
  CHECK(vr.exit_code == 2);
  CHECK(vr.output.find("validation") != std::string::npos);

  // Non-faithful marginal: validation failure with a named diagnostic.
  json pure = matrix_to_json(kron(qtest::mat2(1, 0, 0, 0),
                                  qtest::mat2(0.5, 0, 0, 0.5)));
  pure["dimA"] = 2;
  pure["dimB"] = 2;
  const std::string unfaithful = write_json("unfaithful.json", pure);
  const RunResult ur = run_cli("condition --joint " + unfaithful);
  CHECK(ur.exit_code == 2);
  CHECK(ur.output.find("faithful") != std::string::npos);
}

TEST_CASE("pretty format renders a human summary") {
  const RunResult r = run_cli("analyze --scenario epr --format pretty");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("positive conditional A: yes") != std::string::npos);
  CHECK(r.output.find("CP=no") != std::string::npos);
}

TEST_CASE("bayes subcommand inverts a stochastic-style map") {
  // Coarse-graining map F(B) = tr(sigma B) 1 with its transported state.
  const ComplexMatrix sigma0 = qtest::mat2(0.25, 0, 0, 0.75);
  const SuperOperator f =
      from_action(2, 2, [&](const ComplexMatrix &b) -> ComplexMatrix {
        return (sigma0 * b).trace() * ComplexMatrix::Identity(2, 2);
      });
  const std::string map_file = write_json("map.json", superop_to_json(f));
  const std::string rho_file = write_json(
      "rho.json", matrix_to_json(qtest::mat2(0.5, 0.1, 0.1, 0.5)));
  const std::string sigma_file = write_json("sigma.json",
                                            matrix_to_json(sigma0));
  const RunResult r = run_cli("bayes --map " + map_file + " --rho " +
                              rho_file + " --sigma " + sigma_file +
                              " --variant all");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.output);
  for (const char *variant : {"left", "right", "star"})
    CHECK(report["maps"][variant]["classification"]["unital"] == true);

  // State-preservation violation -> exit 2.
  const std::string wrong_sigma = write_json(
      "wrong_sigma.json", matrix_to_json(qtest::mat2(0.9, 0, 0, 0.1)));
  const RunResult bad = run_cli("bayes --map " + map_file + " --rho " +
                                rho_file + " --sigma " + wrong_sigma);
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("state preservation") != std::string::npos);
}

TEST_CASE("domain subcommand reports the family's operator systems") {
  const RunResult r = run_cli("domain --scenario family:p=0.3 --probes 200");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.output);
  CHECK(report["domains"]["A"]["dimension"] == 2);
  CHECK(report["domains"]["B"]["dimension"] == 2);
  CHECK(report["domains"]["B"]["operator_system"] == true);
  CHECK(report["restricted_positivity"]["A"] == true);
  CHECK(report["restricted_positivity"]["B"] == true);
  CHECK(report["dual_commutant_inference"] == true);
}

TEST_CASE("infer direction B conditions on the second factor") {
  // Evidence "B sees spin up" lies in the commutant of sigma; the family
  // state was built from sqrt(p)|-, up> + sqrt(q)|+, down>, so the
  // conditional infers |-><-| for Alice.
  const std::string up = write_json(
      "up_b.json", matrix_to_json(ComplexMatrix(matrix_unit(2, 0, 0))));
  const RunResult r = run_cli("infer --scenario family:p=0.3 --evidence " +
                              up + " --direction B --method all");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.output);
  CHECK(report["direction"] == "B->A");
  const ComplexMatrix cond =
      matrix_from_json(report["results"]["conditional"]["state"]);
  check_close(cond, qtest::mat2(0.5, -0.5, -0.5, 0.5), 1e-10);
  CHECK(report["results"]["conditional"]["psd"] == true);
  // The mirrored Petz map of a pure state sends everything to the original
  // rho; belief propagation stays a density as well.
  const ComplexMatrix petz =
      matrix_from_json(report["results"]["petz"]["state"]);
  check_close(petz, qtest::mat2(0.5, 0.2, 0.2, 0.5), 1e-9);
  CHECK(report["results"]["belief_propagation"]["psd"] == true);
}

TEST_CASE("compare subcommand mirrors the library comparison") {
  const std::string minus = write_json(
      "minus.json", matrix_to_json(qtest::mat2(0.5, -0.5, -0.5, 0.5)));
  const RunResult r =
      run_cli("compare --scenario family:p=0.3 --evidence " + minus);
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.output);
  const ComplexMatrix cond =
      matrix_from_json(report["comparison"]["conditional"]);
  check_close(cond, ComplexMatrix(matrix_unit(2, 0, 0)), 1e-10);
  CHECK(report["comparison"]["distances"]["conditional_belief_propagation"] <
        1e-9);
}
