#include <cmath>

#include "doctest.h"
#include "translab/prob.hpp"

using namespace translab;
using doctest::Approx;

TEST_SUITE("prob") {

TEST_CASE("binomial pmf basics") {
  CHECK(binomial_pmf(2, 0.5, 1).value() == Approx(0.5).epsilon(1e-14));
  CHECK(binomial_pmf(0, 0.7, 0).value() == Approx(1.0).epsilon(1e-14));
  // Exact rational 66706983/250000000 evaluated in high precision.
  CHECK(binomial_pmf(10, 0.3, 3).value() == Approx(0.266827932).epsilon(1e-12));
  CHECK_THROWS_AS(binomial_pmf(5, 0.5, 6), std::domain_error);
  CHECK(binomial_pmf(4, 0.0, 0).value() == 1.0);
  CHECK(binomial_pmf(4, 0.0, 2).is_zero());
}

TEST_CASE("binomial pmf sums to one") {
  for (const auto& [n, p] : std::vector<std::pair<int, double>>{
           {1, 0.5}, {7, 0.3}, {40, 0.01}, {100, 0.9}, {250, 0.123}}) {
    LogWeight total = LogWeight::zero();
    for (int k = 0; k <= n; ++k) total = log_add(total, binomial_pmf(n, p, k));
    CHECK(total.value() == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("binomial tail agrees with the incomplete-beta route") {
  CHECK(binomial_tail(10, 0.3, 0) == 1.0);
  CHECK(binomial_tail(10, 0.3, 3) == Approx(0.6172172136).epsilon(1e-10));
  // P{X >= k} = I_p(k, n-k+1): two independent evaluation routes.
  for (int n : {5, 12, 33}) {
    for (double p : {0.08, 0.5, 0.77}) {
      for (int k = 1; k <= n; ++k) {
        CHECK(binomial_tail(n, p, k) ==
              Approx(beta_inc(k, n - k + 1, p)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("hypergeometric pmf on small exact cases") {
  CHECK(hypergeometric_pmf(10, 4, 5, 2).value() == Approx(10.0 / 21.0).epsilon(1e-13));
  CHECK(hypergeometric_pmf(5, 0, 3, 0).value() == Approx(1.0).epsilon(1e-13));
  CHECK(hypergeometric_pmf(6, 6, 2, 2).value() == Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(hypergeometric_pmf(10, 4, 5, 5), std::domain_error);
  CHECK_THROWS_AS(hypergeometric_pmf(10, 11, 5, 2), std::domain_error);
  // impossible k (too few non-K items) has zero mass but is not an error
  CHECK(hypergeometric_pmf(10, 9, 5, 1).is_zero());
  CHECK(hypergeometric_pmf_exact(10, 4, 5, 2) == BigRat(10, 21));
  CHECK(hypergeometric_pmf_exact(10, 9, 5, 1) == 0);
}

TEST_CASE("hypergeometric pmf large-N path matches the exact value") {
  // (200, 60, 100, 30) = 0.12253870497451289, log = -2.0993283399262656.
  const LogWeight w = hypergeometric_pmf(200, 60, 100, 30);
  CHECK(w.value() == Approx(0.12253870497451289).epsilon(1e-11));
  CHECK(w.log_value == Approx(-2.0993283399262656).epsilon(1e-11));
  // Exact integer path and lgamma path agree near the switchover.
  for (std::int64_t N : {120, 127, 128}) {
    const double exact_path = hypergeometric_pmf(N, N / 3, N / 2, N / 7).value();
    const double lg = std::exp(log_choose(N / 3, N / 7) +
                               log_choose(N - N / 3, N / 2 - N / 7) - log_choose(N, N / 2));
    CHECK(exact_path == Approx(lg).epsilon(1e-11));
  }
}

TEST_CASE("hypergeometric pmf sums to one") {
  for (std::int64_t N : {10, 60, 130, 200}) {
    const std::int64_t K = N / 3, u = N / 2;
    LogWeight total = LogWeight::zero();
    for (std::int64_t k = 0; k <= std::min(K, u); ++k)
      total = log_add(total, hypergeometric_pmf(N, K, u, k));
    CHECK(total.value() == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hypergeometric moments") {
  const Moments m = hypergeometric_moments(10, 4, 5);
  CHECK(m.mean == Approx(2.0).epsilon(1e-15));
  CHECK(m.variance == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(hypergeometric_moments(10, 4, 10).variance == 0.0);
  CHECK(hypergeometric_moments(1, 1, 1).variance == 0.0);
}

TEST_CASE("moments match pmf-weighted sums") {
  for (std::int64_t N = 1; N <= 60; N += 3) {
    for (std::int64_t K = 0; K <= N; K += 5) {
      for (std::int64_t u = 0; u <= N; u += 4) {
        const Moments m = hypergeometric_moments(N, K, u);
        double mean = 0, second = 0;
        for (std::int64_t k = std::max<std::int64_t>(0, u + K - N); k <= std::min(K, u); ++k) {
          const double p = hypergeometric_pmf(N, K, u, k).value();
          mean += p * static_cast<double>(k);
          second += p * static_cast<double>(k) * static_cast<double>(k);
        }
        CHECK(std::abs(mean - m.mean) <= 1e-10 * std::max(1.0, m.mean));
        CHECK(std::abs(second - mean * mean - m.variance) <=
              1e-10 * std::max(1.0, m.variance));
      }
    }
  }
}

TEST_CASE("multinomial sampling") {
  Rng rng(8);
  const std::vector<double> degenerate = {1.0, 0.0, 0.0};
  const auto counts = multinomial_sample(degenerate, 50, rng);
  CHECK(counts[0] == 50);
  CHECK(counts[1] == 0);

  const std::vector<double> uniform = {0.5, 0.5};
  const auto c2 = multinomial_sample(uniform, 100000, rng);
  CHECK(c2[0] + c2[1] == 100000);
  const double sigma = std::sqrt(0.25 / 100000.0) * 100000.0;
  CHECK(std::abs(static_cast<double>(c2[0]) - 50000.0) <= 4 * sigma);

  const std::vector<double> bad = {0.5, 0.6};
  CHECK_THROWS_AS(multinomial_sample(bad, 5, rng), std::domain_error);
  const std::vector<double> negative = {1.5, -0.5};
  CHECK_THROWS_AS(multinomial_sample(negative, 5, rng), std::domain_error);
}

TEST_CASE("multinomial coordinate marginals are binomial") {
  // 2000 draws of a 50-trial multinomial; coordinate histograms vs the
  // Binomial(50, p_j) pmf.
  const std::vector<double> probs = {0.25, 0.25, 0.5};
  const int draws = 2000, n = 50;
  std::vector<std::vector<std::int64_t>> hist(3, std::vector<std::int64_t>(n + 1, 0));
  for (int t = 0; t < draws; ++t) {
    Rng rng = Rng::for_trial(99, t);
    const auto counts = multinomial_sample(probs, n, rng);
    CHECK(counts[0] + counts[1] + counts[2] == n);
    for (int j = 0; j < 3; ++j) ++hist[j][counts[j]];
  }
  for (int j = 0; j < 3; ++j) {
    std::vector<double> pmf(n + 1);
    for (int k = 0; k <= n; ++k) pmf[k] = binomial_pmf(n, probs[j], k).value();
    CHECK(chi_squared_gof_pvalue(hist[j], pmf) > 0.001);
  }
}

TEST_CASE("chebyshev-cantelli basics") {
  CHECK(chebyshev_cantelli(2.0, 0.5, 2.0) == 0.0);     // vacuous at the mean
  CHECK(chebyshev_cantelli(2.0, 0.0, 1.0) == 1.0);     // degenerate law
  CHECK(chebyshev_cantelli(2.0, 2.0 / 3.0, 1.0) == Approx(0.6).epsilon(1e-15));
  // ... and 0.6 really lower-bounds the exact tail P{Z >= 1} = 41/42.
  double tail = 0;
  for (int k = 1; k <= 4; ++k) tail += hypergeometric_pmf(10, 4, 5, k).value();
  CHECK(0.6 <= tail);
}

TEST_CASE("chebyshev-cantelli lower-bounds every tested discrete tail") {
  // Hypergeometric grid N <= 100.
  for (std::int64_t N = 2; N <= 100; N += 7) {
    for (std::int64_t K = 1; K <= N; K += 9) {
      for (std::int64_t u = 1; u <= N; u += 9) {
        const Moments mo = hypergeometric_moments(N, K, u);
        std::vector<double> pmf(std::min(K, u) + 1);
        for (std::int64_t k = 0; k <= std::min(K, u); ++k)
          pmf[k] = hypergeometric_pmf(N, K, u, k).value();
        for (std::int64_t t = 0; t < mo.mean; ++t) {
          double tail = 0;
          for (std::int64_t k = t; k <= std::min(K, u); ++k) tail += pmf[k];
          CHECK(chebyshev_cantelli(mo.mean, mo.variance, static_cast<double>(t)) <=
                tail + 1e-12);
        }
      }
    }
  }
  // Binomial grid.
  for (int n = 1; n <= 100; n += 11) {
    for (double p : {0.1, 0.5, 0.9}) {
      const double mean = n * p, var = n * p * (1 - p);
      for (int t = 0; t < mean; ++t) {
        CHECK(chebyshev_cantelli(mean, var, t) <= binomial_tail(n, p, t) + 1e-12);
      }
    }
  }
}

TEST_CASE("central binomial facts") {
  const auto f1 = binomial_central_facts(1);
  CHECK(f1.at_least_half == Approx(0.75).epsilon(1e-15));
  CHECK(f1.central_pmf == Approx(0.5).epsilon(1e-15));
  CHECK(f1.central_bound == Approx(0.28209479177387814).epsilon(1e-13));
  CHECK(f1.half_holds);
  CHECK_FALSE(f1.central_bound_holds);  // the cited constant fails at k=1

  const auto f4 = binomial_central_facts(4);
  CHECK(f4.central_pmf == Approx(70.0 / 256.0).epsilon(1e-15));
  CHECK(f4.central_bound == Approx(0.14104739588693907).epsilon(1e-13));
  CHECK_FALSE(f4.central_bound_holds);  // fails at k=4 as well

  for (std::int64_t k = 1; k <= 80; ++k) {
    const auto f = binomial_central_facts(k);
    CHECK(f.half_holds);
    CHECK(f.at_least_half >= 0.5);
    CHECK(f.at_least_half <= 1.0);
  }
  CHECK_THROWS_AS(binomial_central_facts(0), std::domain_error);
}

TEST_CASE("chi-squared survival against reference values") {
  CHECK(chi_squared_sf(3.2, 5) == Approx(0.6691829020332432).epsilon(1e-10));
  CHECK(chi_squared_sf(0.5, 1) == Approx(0.47950012218695337).epsilon(1e-10));
  CHECK(chi_squared_sf(25.0, 10) == Approx(0.005345505487134069).epsilon(1e-10));
  CHECK(chi_squared_sf(0.01, 3) == Approx(0.9997348349413444).epsilon(1e-10));
  CHECK(chi_squared_sf(60.0, 60) == Approx(0.4757169861063199).epsilon(1e-10));
  CHECK(chi_squared_sf(0.0, 4) == 1.0);
}

TEST_CASE("goodness-of-fit accepts its own law and rejects a wrong one") {
  const int n = 20;
  std::vector<double> pmf(n + 1);
  for (int k = 0; k <= n; ++k) pmf[k] = binomial_pmf(n, 0.4, k).value();
  std::vector<std::int64_t> hist(n + 1, 0);
  for (int t = 0; t < 20000; ++t) {
    Rng rng = Rng::for_trial(5, t);
    int c = 0;
    for (int i = 0; i < n; ++i) c += (rng.next_double() < 0.4);
    ++hist[c];
  }
  CHECK(chi_squared_gof_pvalue(hist, pmf) > 0.001);
  std::vector<double> wrong(n + 1);
  for (int k = 0; k <= n; ++k) wrong[k] = binomial_pmf(n, 0.6, k).value();
  CHECK(chi_squared_gof_pvalue(hist, wrong) < 1e-6);
}

TEST_CASE("log weights") {
  CHECK(LogWeight::zero().is_zero());
  CHECK(LogWeight::from_value(0.0).is_zero());
  CHECK(log_add(LogWeight::from_value(0.25), LogWeight::from_value(0.5)).value() ==
        Approx(0.75).epsilon(1e-14));
  CHECK(log_add(LogWeight::zero(), LogWeight::from_value(0.1)).value() ==
        Approx(0.1).epsilon(1e-14));
  // tiny masses survive in log space
  const LogWeight tiny = LogWeight::from_log(-2000.0);
  CHECK(log_add(tiny, tiny).log_value == Approx(-2000.0 + std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(LogWeight::from_value(-0.5), std::domain_error);
}

TEST_CASE("exact binomial coefficients") {
  CHECK(binom_u128(0, 0) == 1);
  CHECK(binom_u128(10, 3) == 120);
  CHECK(binom_u128(60, 30) == static_cast<unsigned __int128>(118264581564861424ULL));
  CHECK_THROWS_AS(binom_u128(129, 3), std::domain_error);
  CHECK(binom_big(150, 75) % 1000000007 == BigInt("266463608"));
  CHECK(binom_big(5, -1) == 0);
}

}  // TEST_SUITE
