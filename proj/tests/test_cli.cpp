#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "qbounds/cli.hpp"

using namespace qbounds;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& env = "", const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, env, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("spectrum subcommand") {
  const Run r = run({"spectrum", "Bw", "--format", "json"});
  CHECK(r.code == kExitOk);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["eigenvalues"][0] == 4);
  const Run stdin_run = run({"spectrum", "-", "--matrix", "L"}, "", "Cs\n");
  CHECK(stdin_run.code == kExitOk);
  CHECK(run({"spectrum", "C\x01"}).code == kExitUsage);
}

TEST_CASE("check subcommand exit codes") {
  CHECK(run({"check", "Bw", "--bound", "main_q1q2"}).code == kExitOk);
  CHECK(run({"check", "Cs", "--bound", "q1_lower"}).code == kExitOk);
  CHECK(run({"check", "Bw", "--bound", "q1_lower"}).code == kExitNotApplicable);
  CHECK(run({"check", "Cr", "--bound", "strict_sandwich", "--U", "0"}).code == kExitViolated);
  CHECK(run({"check", "Bw", "--bound", "nope"}).code == kExitUsage);
  CHECK(run({"check", "Bw"}).code == kExitUsage);
}

TEST_CASE("family subcommand") {
  const Run r = run({"family", "--family", "H:1,1,0", "--format", "json"});
  CHECK(r.code == kExitOk);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["closed_form_matches_exact"] == true);
}

TEST_CASE("sweep subcommand") {
  const Run r = run({"sweep", "--corpus", "enumerate:3..5", "--bounds", "main_q1q2", "--format", "json"});
  CHECK(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["theorem_violations"] == 0);
  const Run findings = run({"sweep", "--corpus", "enumerate:3..5", "--bounds", "t1_sandwich:as-written",
                            "--subsets", "all-subsets"});
  CHECK(findings.code == kExitOk);
}

TEST_CASE("environment options fill in unset flags only") {
  const Run env_json = run({"spectrum", "Bw"}, "--format json");
  CHECK(env_json.code == kExitOk);
  CHECK(nlohmann::json::accept(env_json.out));
  const Run argv_wins = run({"spectrum", "Bw", "--format", "csv"}, "--format json");
  CHECK(argv_wins.code == kExitOk);
  CHECK_FALSE(nlohmann::json::accept(argv_wins.out));
  CHECK(run({"spectrum", "Bw"}, "--bound main_q1q2").code == kExitOk);
}
