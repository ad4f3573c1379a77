#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "translab/rational.hpp"
#include "translab/rng.hpp"

namespace translab {

// Nonnegative real carried as its natural logarithm, with a distinguished
// zero. Sums use the max-shift (log-sum-exp) pattern so that e^{-32 m eps}
// scale masses survive.
struct LogWeight {
  double log_value = -std::numeric_limits<double>::infinity();

  static LogWeight zero() { return {}; }
  static LogWeight from_log(double lv) { return {lv}; }
  static LogWeight from_value(double v);

  bool is_zero() const { return log_value == -std::numeric_limits<double>::infinity(); }
  double value() const { return is_zero() ? 0.0 : std::exp(log_value); }
};

LogWeight log_add(LogWeight a, LogWeight b);

// Test-side (or population-side) multiplicity profile: counts[j] copies of
// point j.
using MultiplicityProfile = std::vector<std::int64_t>;

// ---------------------------------------------------------------------------
// Combinatorics
// ---------------------------------------------------------------------------

// Exact binomial coefficient for n <= 128 (fits in unsigned __int128).
unsigned __int128 binom_u128(std::int64_t n, std::int64_t k);

// Exact binomial coefficient, arbitrary size.
BigInt binom_big(std::int64_t n, std::int64_t k);

double log_choose(std::int64_t n, std::int64_t k);  // via lgamma

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

// P{Binomial(n, p) = k}. Requires 0 <= k <= n, p in [0, 1].
LogWeight binomial_pmf(std::int64_t n, double p, std::int64_t k);

// P{Binomial(n, p) >= k}.
double binomial_tail(std::int64_t n, double p, std::int64_t k);

// P{Hypergeometric(N, K, u) = k} = C(K,k) C(N-K,u-k) / C(N,u).
// Exact integer arithmetic for N <= 128, log-gamma beyond.
LogWeight hypergeometric_pmf(std::int64_t N, std::int64_t K, std::int64_t u,
                             std::int64_t k);

// Exact rational hypergeometric pmf (any N).
BigRat hypergeometric_pmf_exact(std::int64_t N, std::int64_t K, std::int64_t u,
                                std::int64_t k);

struct Moments {
  double mean = 0;
  double variance = 0;
};

// mean = uK/N, variance = uK(N-K)(N-u) / (N^2 (N-1)); variance 0 when N = 1.
Moments hypergeometric_moments(std::int64_t N, std::int64_t K, std::int64_t u);

// n draws from a categorical law; counts sum to n and coordinate j is
// marginally Binomial(n, probs[j]). Requires probs to sum to 1 within 1e-12.
MultiplicityProfile multinomial_sample(std::span<const double> probs,
                                       std::int64_t n, Rng& rng);

// Lower bound on P{X >= threshold} for threshold < mean:
// 1 - variance / (variance + (mean - threshold)^2), clamped to [0, 1];
// 0 (vacuous) when threshold >= mean.
double chebyshev_cantelli(double mean, double variance, double threshold);

// Facts about the central binomial used by the proofs:
//   at_least_half  = P{Binom(2k, 1/2) >= k}            (always >= 1/2)
//   central_pmf    = P{Binom(2k, 1/2) = k}
//   central_bound  = sqrt(1/(4 pi k))   (cited analytic bound)
// central_bound_holds records, per k, whether central_pmf <= central_bound;
// the cited constant fails this check for small k and the verifier reports
// rather than asserts it.
struct CentralBinomialFacts {
  double at_least_half = 0;
  double central_pmf = 0;
  double central_bound = 0;
  bool half_holds = false;
  bool central_bound_holds = false;
};

CentralBinomialFacts binomial_central_facts(std::int64_t k);

// ---------------------------------------------------------------------------
// Tail/statistics utilities shared by the test harnesses
// ---------------------------------------------------------------------------

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// Survival function of chi-squared with df degrees of freedom.
double chi_squared_sf(double x, int df);

// Pearson chi-squared goodness-of-fit p-value of observed counts against
// expected probabilities; bins with expected count < 5 are pooled.
double chi_squared_gof_pvalue(std::span<const std::int64_t> observed,
                              std::span<const double> probs);

// Regularized incomplete beta I_x(a, b) (for Clopper-Pearson intervals).
double beta_inc(double a, double b, double x);

}  // namespace translab
