#include <cmath>

#include "doctest.h"
#include "translab/prob.hpp"
#include "translab/verify.hpp"

using namespace translab;
using doctest::Approx;

TEST_SUITE("verify") {

TEST_CASE("binomial-ratio lemma holds over a moderate range") {
  const LemmaReport report = verify_lemma_binomial_ratio(40);
  CHECK(report.violations.empty());
  CHECK(report.triples_checked == 12341);  // C(43,3) + ... = #{i<=k<=n<=40}
}

TEST_CASE("spot row (5,3,2)") {
  LemmaRow row{};
  verify_lemma_binomial_ratio(5, [&](const LemmaRow& r) {
    if (r.n == 5 && r.k == 3 && r.i == 2) row = r;
  });
  CHECK(row.holds);
  CHECK(row.ratio == Approx(0.3).epsilon(1e-14));
  CHECK(row.lower == Approx(0.25).epsilon(1e-14));
  CHECK(row.exp_lower == Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(row.upper == Approx(0.36).epsilon(1e-14));
}

TEST_CASE("degenerate triples are exact ties") {
  verify_lemma_binomial_ratio(12, [&](const LemmaRow& r) {
    CHECK(r.holds);
    if (r.i == 0) {
      CHECK(r.ratio == 1.0);
      CHECK(r.lower == Approx(1.0).epsilon(1e-14));
      CHECK(r.upper == Approx(1.0).epsilon(1e-14));
    }
    if (r.i == r.k) {
      // ratio = 1/C(n,k)
      const double expected = 1.0 / static_cast<double>(binom_u128(r.n, r.k));
      CHECK(r.ratio == Approx(expected).epsilon(1e-12));
    }
  });
}

TEST_CASE("range cap") {
  CHECK_THROWS_AS(verify_lemma_binomial_ratio(501), std::domain_error);
  CHECK(verify_lemma_binomial_ratio(0).triples_checked == 1);
}

TEST_CASE("proof constants all pass") {
  const auto checks = verify_proof_constants();
  REQUIRE(checks.size() == 6);
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
}

TEST_CASE("proof constant values") {
  const auto checks = verify_proof_constants();
  CHECK(checks[0].lhs == Approx(6.0 / 447.0).epsilon(1e-15));
  CHECK(checks[0].rhs == Approx(1.0 / 75.0).epsilon(1e-15));
  CHECK(checks[1].lhs == Approx(0.12809111980694287).epsilon(1e-12));
  CHECK(checks[2].lhs == Approx(0.3589526041130609).epsilon(1e-12));
  CHECK(checks[3].lhs == Approx(4.0 / 13.0).epsilon(1e-15));
  CHECK(checks[4].lhs == Approx(0.10017419248196102).epsilon(1e-12));
  CHECK(checks[5].lhs == Approx(0.013203169026621637).epsilon(1e-12));
}

}  // TEST_SUITE
