#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "translab/instances.hpp"

namespace translab {

enum class BoundSetting { TLSI, TLSII, SL, SSL };
enum class BoundKind { lower, upper };
enum class BoundMode { probability, expectation, sample_complexity };

std::string to_string(BoundSetting s);
std::string to_string(BoundKind k);
std::string to_string(BoundMode m);

// One closed-form bound value plus an applicability verdict. When the
// hypotheses of the theorem fail, the value is still computed (diagnostic)
// and the violated conditions are listed; inapplicability is never an error
// because experiment sweeps cross validity boundaries on purpose.
struct BoundEvaluation {
  std::string name;
  BoundSetting setting = BoundSetting::TLSI;
  BoundKind kind = BoundKind::lower;
  BoundMode mode = BoundMode::probability;
  double value = 0;
  bool applicable = false;
  std::vector<std::string> failed_conditions;
  bool caller_constant = false;  // value depends on a caller-supplied constant
};

// Minimax probability lower bound for TLSI. Statement 1 gives
// (1/150) e^{-32 m eps} (1/4 for d < 7) when u >= m >= 8(d-1) and
// eps <= 1/32; Statement 2 gives 1/16 when max{9, 2(d-1)} <= m <=
// min{d/(24 eps), u}. Returns the max over applicable statements.
BoundEvaluation lower_prob_tlsi(int d, std::int64_t m, std::int64_t u, double eps);

// Labeled-sample threshold below which any learner fails at level delta:
// max{ (1/(32 eps)) ln(1/(150 delta)), d/(24 eps) }.
// Applicable iff eps <= 1/32 and delta <= 1/150.
BoundEvaluation sample_complexity_lower_tlsi(int d, double eps, double delta);

// Secondary Theta-form of the same threshold:
// (1/(64 eps)) ln(1/(150 delta)) + d/(48 eps).
double sample_complexity_lower_tlsi_theta(int d, double eps, double delta);

// Minimax expected-risk lower bound (d-1)/(16 m) for TLSI;
// applicable iff max{9, d-1} <= m <= u and d >= 2.
BoundEvaluation lower_expect_tlsi(int d, std::int64_t m, std::int64_t u);

// Minimax probability lower bound for TLSII. Statement 1 gives 1/80 when
// max{(d-1)/2, 10} <= m <= min{(d-1)/(21 eps), u}; Statement 2 gives
// (1/18) e^{-32 m eps} when 0 < eps <= 1/32 and m >= d-1.
BoundEvaluation lower_prob_tlsii(int d, std::int64_t m, std::int64_t u, double eps);

// max{ (1/(32 eps)) ln(1/(80 delta)), (d-1)/(21 eps) };
// applicable iff eps <= 1/32 and delta <= 1/80.
BoundEvaluation sample_complexity_lower_tlsii(int d, double eps, double delta);

// Minimax expected-risk lower bound ((d-1)/(2 e m)) (1 - 1/m) for TLSII;
// applicable iff m >= d-1 >= 1.
BoundEvaluation lower_expect_tlsii(int d, std::int64_t m);

struct ErmUpperTlsi {
  BoundEvaluation prob_bound;    // 2 (d ln(Ne/d) + ln(1/delta)) / m
  BoundEvaluation expect_bound;  // (2 d ln(Ne/d) + 2) / m
};

// ERM upper bounds for TLSI (N = m + u); applicable iff u >= 4,
// u >= m >= d-1, d >= 2.
ErmUpperTlsi erm_upper_tlsi(int d, std::int64_t m, std::int64_t u, double delta);

// Corrected tail bound: max{ 2 (d ln(Ne/d) + ln(1/delta)) / m, sqrt(2)/u };
// applicable iff u >= 4 and m <= u.
BoundEvaluation erm_upper_tlsi_corrected(int d, std::int64_t m, std::int64_t u,
                                         double delta);

struct ErmUpperTlsii {
  BoundEvaluation prob_direct;         // direct Bernstein analysis
  BoundEvaluation prob_via_reduction;  // through the TLSI reduction
  BoundEvaluation expect;              // (2 d ln(2m) + 4) / (m ln 2)
  double direct_over_reduction = 0;    // the log(N)/log(m) payment, measured
};

ErmUpperTlsii erm_upper_tlsii(int d, std::int64_t m, std::int64_t u, double delta);

struct ParamUpperTlsii {
  BoundEvaluation prob;    // C (d + ln(2/delta)) / m + 5 ln(2/delta) / (3u)
  BoundEvaluation expect;  // C d / m
};

// Big-O bounds for the majority-of-ERMs learner, surfaced only through a
// caller-supplied constant C (the source states no constant).
// Throws std::domain_error for C <= 0 or delta outside (0, 1).
ParamUpperTlsii hanneke_upper_tlsii(int d, std::int64_t m, std::int64_t u,
                                    double delta, double C);

struct SslLowerBounds {
  double expect_lower = 0;  // = mII_expect (the expectation chain)
  double prob_lower = 0;    // = max(0, mII_prob_at_2eps - e^{-2 u eps^2})
};

SslLowerBounds ssl_relations(double mII_expect, double mII_prob_at_2eps,
                             std::int64_t u, double eps);

// Both sides of the inequality the earlier transductive analysis relied on,
// which is false below the threshold eps = (sqrt(m+u+2) - 1)/u.
// Requires eps > 0 (the derivation divides by u*eps).
struct Cm06FlawCheck {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;  // lhs <= rhs, i.e. eps >= threshold
  double threshold = 0;
};

Cm06FlawCheck cm06_flaw_check(std::int64_t m, std::int64_t u, double eps);

// Batch mode: evaluates every bound for a JSON array of parameter points and
// emits CSV rows (name, setting, kind, mode, value, applicable,
// failed_conditions).
std::string bounds_batch_csv(const std::string& json_points);

}  // namespace translab
