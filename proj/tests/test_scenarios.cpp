#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "translab/scenarios.hpp"

using namespace translab;

namespace {

std::string run_to_string(const ScenarioSpec& spec, int* exit_code = nullptr,
                          OutputFormat format = OutputFormat::csv) {
  ExperimentConfig base;
  std::ostringstream out;
  const int code = run_scenario(spec, base, out, format);
  if (exit_code) *exit_code = code;
  return out.str();
}

}  // namespace

TEST_SUITE("scenarios") {

TEST_CASE("unknown scenarios are rejected") {
  ExperimentConfig base;
  std::ostringstream out;
  CHECK_THROWS_AS(run_scenario({"no-such-scenario", {}}, base, out), std::invalid_argument);
  CHECK(is_known_scenario("rate-sweep"));
  CHECK_FALSE(is_known_scenario("rate-sweeps"));
}

TEST_CASE("csv output carries the schema header and passes") {
  int code = -1;
  const std::string csv = run_to_string({"cm06-flaw", {}}, &code);
  CHECK(code == kExitOk);
  CHECK(csv.rfind("# schema=1\n", 0) == 0);
  CHECK(csv.find("scenario,d,m,u,epsilon,delta,trials,seed,estimate,ci_low,ci_high,"
                 "bound_name,bound_value,applicable,verdict") != std::string::npos);
  CHECK(csv.find(",fail\n") == std::string::npos);
}

TEST_CASE("jsonl rows parse") {
  int code = -1;
  const std::string out =
      run_to_string({"ssl-chain", {}}, &code, OutputFormat::jsonl);
  CHECK(code == kExitOk);
  std::istringstream lines(out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("scenario") == "ssl-chain");
    CHECK(j.at("verdict") == "pass");
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("ssl chain scenario reports the exact values") {
  const std::string csv = run_to_string({"ssl-chain", {}});
  CHECK(csv.find("minimax_transductive") != std::string::npos);
  CHECK(csv.find("0.125") != std::string::npos);
}

TEST_CASE("reruns are byte-identical, including across thread counts") {
  ScenarioSpec spec{"tlsi-lower-expect",
                    {{"trials", "20000"}, {"seed", "31415"}, {"threads", "1"}}};
  const std::string once = run_to_string(spec);
  const std::string twice = run_to_string(spec);
  CHECK(once == twice);
  spec.params["threads"] = "8";
  CHECK(run_to_string(spec) == once);
  CHECK(once.find(",pass") != std::string::npos);
}

TEST_CASE("scenario parameter overrides are honored") {
  ScenarioSpec spec{"tlsi-lower-prob",
                    {{"trials", "4000"}, {"epsilon", "1/256"}, {"seed", "5"}}};
  int code = -1;
  const std::string csv = run_to_string(spec, &code);
  CHECK(code == kExitOk);
  CHECK(csv.find(",0.00390625,") != std::string::npos);  // epsilon column
  CHECK(csv.find(",4000,") != std::string::npos);
}

TEST_CASE("lower-bound scenarios pass at small trial counts") {
  for (const char* name : {"tlsii-lower-prob", "tlsii-lower-expect"}) {
    ScenarioSpec spec{name, {{"trials", "20000"}, {"seed", "10"}, {"threads", "4"}}};
    int code = -1;
    run_to_string(spec, &code);
    CHECK(code == kExitOk);
  }
}

TEST_CASE("upper-bound scenarios pass") {
  for (const char* name : {"erm-upper-tlsi", "erm-upper-tlsii"}) {
    ScenarioSpec spec{name, {{"trials", "2000"}, {"seed", "11"}, {"threads", "4"}}};
    int code = -1;
    const std::string csv = run_to_string(spec, &code);
    CHECK(code == kExitOk);
    CHECK(csv.find(",pass") != std::string::npos);
  }
}

TEST_CASE("hanneke scenario compares the ensemble against C d/m") {
  ScenarioSpec spec{"hanneke-upper",
                    {{"trials", "2000"}, {"seed", "12"}, {"threads", "4"}, {"C", "1"}}};
  int code = -1;
  const std::string csv = run_to_string(spec, &code);
  CHECK(code == kExitOk);
  CHECK(csv.find("tlsii_majority_upper_expect") != std::string::npos);
}

TEST_CASE("rate sweep emits per-m rows plus the fit row") {
  ScenarioSpec spec{"rate-sweep", {{"trials", "8000"}, {"seed", "13"}, {"threads", "4"}}};
  int code = -1;
  const std::string csv = run_to_string(spec, &code);
  CHECK(code == kExitOk);
  CHECK(csv.find("rate_fit_slope") != std::string::npos);
  int rows = 0;
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line)) rows += (line.find("rate-sweep,") == 0);
  CHECK(rows == 5);
}

TEST_CASE("lemma scenario emits one row per triple plus the constant rows") {
  ScenarioSpec spec{"lemma-verify", {{"n_max", "10"}}};
  int code = -1;
  const std::string csv = run_to_string(spec, &code);
  CHECK(code == kExitOk);
  int rows = 0;
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line)) rows += (line.find("lemma-verify,") == 0);
  CHECK(rows == 286 + 6);  // C(13,3) triples + 6 constant checks
  CHECK(csv.find("lemma(n=5,k=3,i=2)") != std::string::npos);
  CHECK(csv.find("counting_constant_6_447_gt_1_75") != std::string::npos);
}

}  // TEST_SUITE
