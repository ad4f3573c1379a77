#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "translab/core.hpp"

namespace translab {

enum class OutputFormat { csv, jsonl };

// A named batch experiment binding instances, learners, bounds, and
// estimators. Names mirror the bound table rows; params hold
// scenario-specific overrides (all optional).
struct ScenarioSpec {
  std::string name;
  std::map<std::string, std::string> params;
};

extern const char* const kScenarioNames[11];
bool is_known_scenario(const std::string& name);

// Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 invalid
// configuration, 3 resource overflow in an oracle scenario.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFail = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitResource = 3;

// Runs one scenario, writing one row per (estimator call, bound call) pair:
// parameters, the estimate with its CI, the matching bound value and
// applicability, and a pass/fail verdict (estimate-vs-bound with 3 sigma
// slack). CSV output starts with the versioned "# schema=1" comment line.
int run_scenario(const ScenarioSpec& spec, const ExperimentConfig& cfg,
                 std::ostream& out, OutputFormat format = OutputFormat::csv);

}  // namespace translab
