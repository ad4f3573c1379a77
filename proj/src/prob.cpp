#include "translab/prob.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <stdexcept>

namespace translab {

LogWeight LogWeight::from_value(double v) {
  if (v < 0) throw std::domain_error("LogWeight: negative value");
  if (v == 0) return zero();
  return {std::log(v)};
}

LogWeight log_add(LogWeight a, LogWeight b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double hi = std::max(a.log_value, b.log_value);
  const double lo = std::min(a.log_value, b.log_value);
  return LogWeight::from_log(hi + std::log1p(std::exp(lo - hi)));
}

// ---------------------------------------------------------------------------
// Combinatorics
// ---------------------------------------------------------------------------

namespace {

constexpr int kPascalMax = 128;

const unsigned __int128* pascal_table() {
  static std::once_flag flag;
  static std::vector<unsigned __int128> table;
  std::call_once(flag, [] {
    table.assign(static_cast<std::size_t>(kPascalMax + 1) * (kPascalMax + 1), 0);
    auto at = [&](int n, int k) -> unsigned __int128& {
      return table[static_cast<std::size_t>(n) * (kPascalMax + 1) + k];
    };
    for (int n = 0; n <= kPascalMax; ++n) {
      at(n, 0) = 1;
      for (int k = 1; k <= n; ++k)
        at(n, k) = at(n - 1, k - 1) + (k <= n - 1 ? at(n - 1, k) : 0);
    }
  });
  return table.data();
}

double u128_to_double(unsigned __int128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  const auto lo = static_cast<std::uint64_t>(v);
  return static_cast<double>(hi) * 0x1.0p64 + static_cast<double>(lo);
}

}  // namespace

unsigned __int128 binom_u128(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > kPascalMax) throw std::domain_error("binom_u128: n must be <= 128");
  return pascal_table()[static_cast<std::size_t>(n) * (kPascalMax + 1) + k];
}

BigInt binom_big(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t t = 0; t < k; ++t) {
    r *= (n - t);
    r /= (t + 1);  // exact: r is C(n, t+1) scaled progressively
  }
  return r;
}

double log_choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

LogWeight binomial_pmf(std::int64_t n, double p, std::int64_t k) {
  if (k < 0 || k > n) throw std::domain_error("binomial_pmf: need 0 <= k <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial_pmf: p must be in [0,1]");
  if (p == 0.0) return k == 0 ? LogWeight::from_log(0.0) : LogWeight::zero();
  if (p == 1.0) return k == n ? LogWeight::from_log(0.0) : LogWeight::zero();
  const double lv = log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p);
  return LogWeight::from_log(lv);
}

double binomial_tail(std::int64_t n, double p, std::int64_t k) {
  if (k < 0 || k > n) throw std::domain_error("binomial_tail: need 0 <= k <= n");
  if (k == 0) return 1.0;
  LogWeight acc = LogWeight::zero();
  for (std::int64_t j = k; j <= n; ++j) acc = log_add(acc, binomial_pmf(n, p, j));
  return std::min(1.0, acc.value());
}

LogWeight hypergeometric_pmf(std::int64_t N, std::int64_t K, std::int64_t u,
                             std::int64_t k) {
  if (K > N || u > N || K < 0 || u < 0)
    throw std::domain_error("hypergeometric_pmf: need K <= N and u <= N");
  if (k < 0 || k > std::min(K, u))
    throw std::domain_error("hypergeometric_pmf: need k <= min(K, u)");
  if (u - k > N - K) return LogWeight::zero();  // not enough non-K items
  if (N <= kPascalMax) {
    const unsigned __int128 a = binom_u128(K, k);
    const unsigned __int128 b = binom_u128(N - K, u - k);
    const unsigned __int128 c = binom_u128(N, u);
    return LogWeight::from_log(std::log(u128_to_double(a)) + std::log(u128_to_double(b)) -
                               std::log(u128_to_double(c)));
  }
  return LogWeight::from_log(log_choose(K, k) + log_choose(N - K, u - k) - log_choose(N, u));
}

BigRat hypergeometric_pmf_exact(std::int64_t N, std::int64_t K, std::int64_t u,
                                std::int64_t k) {
  if (K > N || u > N || K < 0 || u < 0 || k < 0 || k > std::min(K, u))
    throw std::domain_error("hypergeometric_pmf_exact: bad parameters");
  if (u - k > N - K) return BigRat(0);
  return BigRat(binom_big(K, k) * binom_big(N - K, u - k), binom_big(N, u));
}

Moments hypergeometric_moments(std::int64_t N, std::int64_t K, std::int64_t u) {
  if (K > N || u > N || K < 0 || u < 0 || N < 1)
    throw std::domain_error("hypergeometric_moments: bad parameters");
  Moments m;
  const double Nd = static_cast<double>(N);
  m.mean = static_cast<double>(u) * static_cast<double>(K) / Nd;
  if (N == 1) {
    m.variance = 0.0;
    return m;
  }
  m.variance = static_cast<double>(u) * static_cast<double>(K) *
               static_cast<double>(N - K) * static_cast<double>(N - u) /
               (Nd * Nd * static_cast<double>(N - 1));
  return m;
}

MultiplicityProfile multinomial_sample(std::span<const double> probs, std::int64_t n,
                                       Rng& rng) {
  double total = 0;
  for (double p : probs) {
    if (p < 0) throw std::domain_error("multinomial_sample: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::domain_error("multinomial_sample: probabilities must sum to 1");
  MultiplicityProfile counts(probs.size(), 0);
  for (std::int64_t t = 0; t < n; ++t) {
    double x = rng.next_double();
    std::size_t j = 0;
    for (; j + 1 < probs.size(); ++j) {
      if (x < probs[j]) break;
      x -= probs[j];
    }
    ++counts[j];
  }
  return counts;
}

double chebyshev_cantelli(double mean, double variance, double threshold) {
  if (variance < 0) throw std::domain_error("chebyshev_cantelli: negative variance");
  if (threshold >= mean) return 0.0;
  const double gap = mean - threshold;
  const double v = 1.0 - variance / (variance + gap * gap);
  return std::clamp(v, 0.0, 1.0);
}

CentralBinomialFacts binomial_central_facts(std::int64_t k) {
  if (k < 1) throw std::domain_error("binomial_central_facts: k >= 1 required");
  CentralBinomialFacts f;
  const std::int64_t n = 2 * k;
  if (n <= kPascalMax) {
    unsigned __int128 upper = 0;
    for (std::int64_t j = k; j <= n; ++j) upper += binom_u128(n, j);
    const double denom = std::ldexp(1.0, static_cast<int>(n));
    f.at_least_half = u128_to_double(upper) / denom;
    f.central_pmf = u128_to_double(binom_u128(n, k)) / denom;
  } else {
    f.at_least_half = binomial_tail(n, 0.5, k);
    f.central_pmf = binomial_pmf(n, 0.5, k).value();
  }
  f.central_bound = std::sqrt(1.0 / (4.0 * M_PI * static_cast<double>(k)));
  f.half_holds = f.at_least_half >= 0.5;
  f.central_bound_holds = f.central_pmf <= f.central_bound;
  return f;
}

// ---------------------------------------------------------------------------
// Incomplete gamma / beta
// ---------------------------------------------------------------------------

namespace {

// Lower regularized incomplete gamma P(a, x) by series (x < a + 1).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma Q(a, x) by continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0 || x < 0) throw std::domain_error("gamma_q: need a > 0, x >= 0");
  if (x == 0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_squared_sf(double x, int df) {
  if (df < 1) throw std::domain_error("chi_squared_sf: df >= 1 required");
  if (x <= 0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

double chi_squared_gof_pvalue(std::span<const std::int64_t> observed,
                              std::span<const double> probs) {
  if (observed.size() != probs.size() || observed.empty())
    throw std::domain_error("chi_squared_gof: size mismatch");
  std::int64_t n = 0;
  for (auto c : observed) n += c;
  if (n <= 0) throw std::domain_error("chi_squared_gof: empty sample");
  // Pool sparse cells (expected < 5) into one bin.
  double stat = 0;
  int bins = 0;
  double pooled_exp = 0;
  double pooled_obs = 0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    const double expct = probs[j] * static_cast<double>(n);
    if (expct < 5.0) {
      pooled_exp += expct;
      pooled_obs += static_cast<double>(observed[j]);
      continue;
    }
    const double diff = static_cast<double>(observed[j]) - expct;
    stat += diff * diff / expct;
    ++bins;
  }
  if (pooled_exp > 0) {
    const double diff = pooled_obs - pooled_exp;
    stat += diff * diff / pooled_exp;
    ++bins;
  }
  if (bins < 2) return 1.0;  // everything in one cell, nothing to test
  return chi_squared_sf(stat, bins - 1);
}

double beta_inc(double a, double b, double x) {
  if (a <= 0 || b <= 0) throw std::domain_error("beta_inc: need a, b > 0");
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  // Continued fraction (modified Lentz), with the symmetry flip for
  // convergence when x > (a+1)/(a+b+2).
  const double ln_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  auto cf = [](double a_, double b_, double x_) {
    const double tiny = 1e-300;
    double c = 1.0;
    double d = 1.0 - (a_ + b_) * x_ / (a_ + 1.0);
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
      const int m2 = 2 * m;
      double num = m * (b_ - m) * x_ / ((a_ + m2 - 1.0) * (a_ + m2));
      d = 1.0 + num * d;
      if (std::abs(d) < tiny) d = tiny;
      c = 1.0 + num / c;
      if (std::abs(c) < tiny) c = tiny;
      d = 1.0 / d;
      h *= d * c;
      num = -(a_ + m) * (a_ + b_ + m) * x_ / ((a_ + m2) * (a_ + m2 + 1.0));
      d = 1.0 + num * d;
      if (std::abs(d) < tiny) d = tiny;
      c = 1.0 + num / c;
      if (std::abs(c) < tiny) c = tiny;
      d = 1.0 / d;
      const double del = d * c;
      h *= del;
      if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h;
  };
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(ln_front) * cf(a, b, x) / a;
  return 1.0 - std::exp(ln_front) * cf(b, a, 1.0 - x) / b;
}

}  // namespace translab
