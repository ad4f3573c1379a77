#include "translab/verify.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "translab/rational.hpp"

namespace translab {

namespace {

using boost::multiprecision::pow;

// Cached exact binomial triangle up to n_max.
struct BinomTable {
  int n_max;
  std::vector<BigInt> data;  // (n_max+1) x (n_max+1)

  explicit BinomTable(int nm) : n_max(nm), data(std::size_t(nm + 1) * (nm + 1)) {
    for (int n = 0; n <= n_max; ++n) {
      at(n, 0) = 1;
      for (int k = 1; k <= n; ++k)
        at(n, k) = at(n - 1, k - 1) + (k <= n - 1 ? at(n - 1, k) : BigInt(0));
    }
  }
  BigInt& at(int n, int k) { return data[std::size_t(n) * (n_max + 1) + k]; }
  const BigInt& at(int n, int k) const { return data[std::size_t(n) * (n_max + 1) + k]; }
};

// a/b >= (c/d)^e, all exact.
bool ratio_ge_pow(const BigInt& a, const BigInt& b, std::int64_t c, std::int64_t d,
                  unsigned e) {
  return a * pow(BigInt(d), e) >= b * pow(BigInt(c), e);
}

bool ratio_le_pow(const BigInt& a, const BigInt& b, std::int64_t c, std::int64_t d,
                  unsigned e) {
  return a * pow(BigInt(d), e) <= b * pow(BigInt(c), e);
}

double pow_frac(double c, double d, double e) { return std::exp(e * (std::log(c) - std::log(d))); }

}  // namespace

LemmaReport verify_lemma_binomial_ratio(int n_max,
                                        const std::function<void(const LemmaRow&)>& emit) {
  if (n_max < 0 || n_max > 500)
    throw std::domain_error("lemma verification: n_max must be in [0, 500]");
  const BinomTable binom(n_max);
  LemmaReport report;
  for (int n = 0; n <= n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (int i = 0; i <= k; ++i) {
        ++report.triples_checked;
        const BigInt& num = binom.at(n - i, k - i);
        const BigInt& den = binom.at(n, k);

        // lower bounds: ((k-i+1)/(n-i+1))^i and ((k+1-i)/(k+1))^{n-k}
        const bool low1 = ratio_ge_pow(num, den, k - i + 1, n - i + 1, unsigned(i));
        const bool low2 = ratio_ge_pow(num, den, k + 1 - i, k + 1, unsigned(n - k));
        // upper bounds: (k/n)^i and ((n-i)/n)^{n-k}; exponent 0 cases are 1
        const bool up1 = (i == 0) || ratio_le_pow(num, den, k, n, unsigned(i));
        const bool up2 = (n == k) || ratio_le_pow(num, den, n - i, n, unsigned(n - k));

        // max{lower} >= exp(-(n-k) i / (k-i+1)): equality when i = 0 or
        // n = k; otherwise the log-domain margin is at least ~1/(2(n-i+1)),
        // far above long double noise.
        bool exp_ok = true;
        const double exp_arg =
            -static_cast<double>(n - k) * i / static_cast<double>(k - i + 1);
        if (i != 0 && n != k) {
          const long double l1 =
              static_cast<long double>(i) *
              (std::log(static_cast<long double>(k - i + 1)) -
               std::log(static_cast<long double>(n - i + 1)));
          const long double l2 =
              static_cast<long double>(n - k) *
              (std::log(static_cast<long double>(k + 1 - i)) -
               std::log(static_cast<long double>(k + 1)));
          exp_ok = std::max(l1, l2) >= static_cast<long double>(exp_arg);
        }

        const bool holds = low1 && low2 && up1 && up2 && exp_ok;
        if (!holds || emit) {
          LemmaRow row;
          row.n = n;
          row.k = k;
          row.i = i;
          row.ratio = BigRat(num, den).convert_to<double>();
          row.lower = std::max(pow_frac(k - i + 1, n - i + 1, i),
                               pow_frac(k + 1 - i, k + 1, n - k));
          row.exp_lower = std::exp(exp_arg);
          row.upper = std::min(i == 0 ? 1.0 : pow_frac(k, n, i),
                               n == k ? 1.0 : pow_frac(n - i, n, n - k));
          row.holds = holds;
          if (emit) emit(row);
          if (!holds) report.violations.push_back(row);
        }
      }
    }
  }
  return report;
}

LemmaReport verify_lemma_binomial_ratio(int n_max) {
  return verify_lemma_binomial_ratio(n_max, nullptr);
}

std::vector<ConstantCheck> verify_proof_constants() {
  std::vector<ConstantCheck> checks;
  auto add = [&checks](std::string name, double lhs, double rhs, bool pass) {
    checks.push_back({std::move(name), lhs, rhs, pass});
  };

  // Permutation-counting constant: 6/447 > 1/75, exactly (450 > 447).
  add("counting_constant_6_447_gt_1_75", 6.0 / 447.0, 1.0 / 75.0,
      BigInt(6) * 75 > BigInt(447) * 1);

  // Hypergeometric mass floor: (e^{-1} * 7/16)^{9/8} > 1/8.
  {
    const double lhs = std::exp(1.125 * (std::log(7.0 / 16.0) - 1.0));
    add("mass_floor_pow_gt_1_8", lhs, 0.125, lhs > 0.125);
  }

  // Central-binomial margin: (1/2)(1 - sqrt(1/(4 pi))) > 1/3.
  {
    const double lhs = 0.5 * (1.0 - std::sqrt(1.0 / (4.0 * M_PI)));
    add("central_binomial_margin_gt_1_3", lhs, 1.0 / 3.0, lhs > 1.0 / 3.0);
  }

  // Cantelli margin: 1 - 1/(1 + (2 - 4/3)^2) = 4/13 > 3/10, exactly (40 > 39).
  add("cantelli_margin_gt_3_10", 4.0 / 13.0, 0.3, BigInt(4) * 10 > BigInt(13) * 3);

  // Variance constant: C0 = (1/4) sqrt(19/(20 e)) - 1/21 > 0, and the floor
  // 1 - (3/4)/((3/4) + C0^2) >= 1/80 it feeds.
  {
    const double c0 = 0.25 * std::sqrt(19.0 / (20.0 * M_E)) - 1.0 / 21.0;
    add("variance_constant_positive", c0, 0.0, c0 > 0.0);
    const double floor = 1.0 - 0.75 / (0.75 + c0 * c0);
    add("variance_floor_ge_1_80", floor, 1.0 / 80.0, floor >= 1.0 / 80.0);
  }

  return checks;
}

}  // namespace translab
