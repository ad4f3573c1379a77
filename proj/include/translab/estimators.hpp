#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "translab/bounds.hpp"
#include "translab/instances.hpp"
#include "translab/learners.hpp"

namespace translab {

enum class CiMethod { wilson, clopper_pearson, normal };

// Interval helpers behind the estimates. Wilson keeps probability intervals
// non-degenerate near 0; the exact Clopper-Pearson form is flag-selectable.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double z);
std::pair<double, double> clopper_pearson_interval(std::int64_t successes,
                                                   std::int64_t trials, double alpha);

// Monte Carlo estimate with a 99% confidence interval. Bit-for-bit
// reproducible from (inputs, master_seed, trials) regardless of thread
// count: trial streams are counter-seeded and aggregation is exact-integer.
struct McEstimate {
  double mean = 0;
  double stderr_ = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::int64_t trials = 0;
  std::uint64_t master_seed = 0;
};

// P{err(h_m, Z_u) >= eps} for the learner on the instance family, by cfg.trials
// independent trials. Per trial: draw b (uniform unless the family fixes it),
// materialize the instance, draw the split (TLSI) or iid samples (TLSII), run
// the learner on (Z_m, X_u), and record the exceedance. Wilson interval by
// default, Clopper-Pearson by flag.
McEstimate mc_error_probability(const LearnerSpec& learner, const InstanceFamily& family,
                                const ExperimentConfig& cfg,
                                CiMethod ci = CiMethod::wilson);

// E[err(h_m, Z_u)] under the same harness; normal-approximation interval.
McEstimate mc_expected_error(const LearnerSpec& learner, const InstanceFamily& family,
                             const ExperimentConfig& cfg);

// Exact expectation of the ERM error on a TLSI population under uniform B:
//   (1/(2u)) * sum_j i_j * P{k_j = i_j},  P{k_j = i_j} = C(N-i_j, m)/C(N, m).
// A point with all copies in the test side was never trained on, so the
// canonical ERM predicts independently of its uniform label (error exactly
// 1/2); a trained-on point is predicted correctly. Requires the full class
// (throws std::domain_error otherwise, the independence argument needs it).
BigRat exact_expected_error_erm_tlsi(const PopulationSpec& spec, std::int64_t m,
                                     const HypothesisClass& cls);

// ---------------------------------------------------------------------------
// Exact brute-force minimax oracle (tiny scale)
// ---------------------------------------------------------------------------

using TinyInstance = std::variant<PopulationSpec, DiscreteDistribution>;

// What a learner sees: the ordered training set and the ordered unlabeled
// test inputs. No quotienting by symmetry; correctness before speed.
struct Observation {
  Dataset train;
  std::vector<PointId> unlabeled;

  friend auto operator<=>(const Observation&, const Observation&) = default;
};

enum class RiskMode { expectation, probability };

struct ExactMinimaxResult {
  BigRat value;
  std::map<Observation, Hypothesis> optimal_learner_table;
  std::size_t instance_family_size = 0;
};

// Exact min over deterministic learner tables of the max over family members
// of the expected risk (or P{err >= eps} in probability mode). Enumerates
// deterministic learners only, so the value upper-bounds the randomized
// minimax. Throws a resource error (std::length_error) with a size report
// when the assignment space exceeds 10^7.
ExactMinimaxResult exact_minimax_tiny(const HypothesisClass& cls,
                                      const std::vector<TinyInstance>& family,
                                      std::int64_t m, std::int64_t u, RiskMode mode,
                                      Rat64 eps = Rat64::zero());

// Exact risk of a fixed deterministic learner on one family member.
BigRat exact_learner_risk_tiny(const LearnerSpec& learner, const HypothesisClass& cls,
                               const TinyInstance& instance, std::int64_t m,
                               std::int64_t u, RiskMode mode, Rat64 eps = Rat64::zero());

// Exact transductive / semi-supervised / supervised minimax values over a
// finite distribution family, expectation mode. The SSL learner sees
// (Z_m, X_u) and is judged on the population error L(h); the SL learner sees
// Z_m only; the transductive learner is judged on err(h, Z_u).
// Verifies mII <= mSSL <= mSL and throws std::logic_error on violation.
struct SslSlResult {
  BigRat mII;
  BigRat mSSL;
  BigRat mSL;
};

SslSlResult ssl_vs_sl_experiment(const HypothesisClass& cls,
                                 const std::vector<DiscreteDistribution>& family,
                                 std::int64_t m, std::int64_t u);

// Least-squares fit of ln(value) against ln(m). Requires >= 3 points with
// positive values.
struct RateFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

RateFit rate_fit(const std::vector<std::pair<double, double>>& m_value_points);

// JSON-lines record for one estimate (External Interfaces).
std::string estimate_to_jsonl(const std::string& estimator, const LearnerSpec& learner,
                              const std::string& instance_json, const McEstimate& est);

}  // namespace translab
