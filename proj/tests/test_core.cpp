#include <set>

#include "doctest.h"
#include "translab/core.hpp"
#include "translab/hypothesis.hpp"
#include "translab/instances.hpp"
#include "translab/prob.hpp"

using namespace translab;

TEST_SUITE("core") {

TEST_CASE("empirical error on labeled pairs") {
  const Hypothesis h01 = make_hypothesis({0, 1});
  const Hypothesis h00 = make_hypothesis({0, 0});
  const Hypothesis h11 = make_hypothesis({1, 1});
  const Dataset two = {{0, 0}, {1, 1}};
  CHECK(empirical_error(h01, two) == Rat64(0, 1));
  CHECK(empirical_error(h00, two) == Rat64(1, 2));
  // Multiset with duplicates: h=(1,1) misses the two (x0, 0) items.
  const Dataset multi = {{0, 0}, {0, 0}, {1, 1}, {1, 1}};
  CHECK(empirical_error(h11, multi) == Rat64(1, 2));
  CHECK(disagreement_count(h11, multi) == 2);
}

TEST_CASE("empirical error rejects the empty dataset") {
  CHECK_THROWS_AS(empirical_error(make_hypothesis({0}), Dataset{}), std::domain_error);
}

TEST_CASE("error values live on the 1/u grid") {
  Rng rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(4));
    const int u = 1 + static_cast<int>(rng.below(12));
    Dataset data;
    for (int i = 0; i < u; ++i)
      data.push_back({static_cast<PointId>(rng.below(d)),
                      static_cast<std::uint8_t>(rng.next_bit())});
    const Hypothesis h{static_cast<std::uint32_t>(rng.below(1u << d)), d};
    const Rat64 e = empirical_error(h, data);
    CHECK(u % e.den == 0);
    CHECK(e >= Rat64(0, 1));
    CHECK(e <= Rat64(1, 1));
  }
}

TEST_CASE("split rejects bad m") {
  Rng rng(1);
  const Dataset pop = {{0, 0}, {1, 1}};
  CHECK_THROWS_AS(split_without_replacement(pop, 2, rng), std::domain_error);
  CHECK_THROWS_AS(split_without_replacement(pop, 0, rng), std::domain_error);
}

TEST_CASE("split is deterministic given the rng state") {
  const Dataset pop = {{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 0}};
  Rng a(99), b(99);
  const auto [am, au] = split_without_replacement(pop, 2, a);
  const auto [bm, bu] = split_without_replacement(pop, 2, b);
  CHECK(am == bm);
  CHECK(au == bu);
}

TEST_CASE("split sizes and content partition the population") {
  Rng rng(5);
  Dataset pop;
  for (int i = 0; i < 9; ++i)
    pop.push_back({static_cast<PointId>(i), static_cast<std::uint8_t>(i % 2)});
  const auto [zm, zu] = split_without_replacement(pop, 4, rng);
  CHECK(zm.size() == 4);
  CHECK(zu.size() == 5);
  std::multiset<std::pair<int, int>> all;
  for (const auto& e : zm) all.insert({e.point, e.label});
  for (const auto& e : zu) all.insert({e.point, e.label});
  std::multiset<std::pair<int, int>> expect;
  for (const auto& e : pop) expect.insert({e.point, e.label});
  CHECK(all == expect);
}

TEST_CASE("each element lands in the training side with probability m/N") {
  // pop of size 2, m = 1: symmetry gives 1/2.
  const Dataset pop = {{0, 0}, {1, 0}};
  const int trials = 100000;
  int first_in_train = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(7, t);
    const auto [zm, zu] = split_without_replacement(pop, 1, rng);
    first_in_train += (zm[0].point == 0);
  }
  const double freq = static_cast<double>(first_in_train) / trials;
  const double sigma = std::sqrt(0.25 / trials);
  CHECK(std::abs(freq - 0.5) <= 4 * sigma);
}

TEST_CASE("inclusion probability is m/N for larger populations") {
  Dataset pop;
  for (int i = 0; i < 10; ++i) pop.push_back({static_cast<PointId>(i), 0});
  const int trials = 100000;
  std::vector<int> in_train(10, 0);
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(11, t);
    const auto [zm, zu] = split_without_replacement(pop, 3, rng);
    for (const auto& e : zm) ++in_train[e.point];
  }
  const double sigma = std::sqrt(0.3 * 0.7 / trials);
  for (int i = 0; i < 10; ++i) {
    const double freq = static_cast<double>(in_train[i]) / trials;
    CHECK(std::abs(freq - 0.3) <= 4 * sigma);
  }
}

TEST_CASE("test-side multiplicity of a duplicated point is hypergeometric") {
  // N = 10 with 4 copies of point 0; m = 3, u = 7: multiplicity in Z_u is
  // hypergeometric(10, 4, 7).
  Dataset pop;
  for (int i = 0; i < 4; ++i) pop.push_back({0, 1});
  for (int i = 0; i < 6; ++i) pop.push_back({static_cast<PointId>(1 + i), 0});
  const int trials = 100000;
  std::vector<std::int64_t> hist(5, 0);
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(13, t);
    const auto [zm, zu] = split_without_replacement(pop, 3, rng);
    int copies = 0;
    for (const auto& e : zu) copies += (e.point == 0);
    ++hist[copies];
  }
  std::vector<double> pmf(5);
  for (int k = 0; k <= 4; ++k) pmf[k] = hypergeometric_pmf(10, 4, 7, k).value();
  CHECK(chi_squared_gof_pvalue(hist, pmf) > 0.001);
}

TEST_CASE("iid sampling from a point mass yields copies") {
  DiscreteDistribution P;
  P.atoms = {{0, 1, Rat64(1, 1)}};
  Rng rng(3);
  const Dataset data = sample_iid(P, 5, rng);
  CHECK(data.size() == 5);
  for (const auto& e : data) {
    CHECK(e.point == 0);
    CHECK(e.label == 1);
  }
}

TEST_CASE("iid sampling matches atom frequencies") {
  DiscreteDistribution P;
  P.atoms = {{0, 0, Rat64(1, 2)}, {1, 1, Rat64(1, 2)}};
  Rng rng(17);
  const Dataset data = sample_iid(P, 10000, rng);
  std::int64_t zeros = 0;
  for (const auto& e : data) zeros += (e.point == 0);
  const double sigma = std::sqrt(0.25 / 10000.0);
  CHECK(std::abs(zeros / 10000.0 - 0.5) <= 4 * sigma);
}

TEST_CASE("iid sampling from the hard expectation law hits mass 1/m") {
  const auto P = tlsii_hard_distribution_expect(3, 4, {0, 1, 0});
  const int n = 100000;
  Rng rng(23);
  const Dataset data = sample_iid(P, n, rng);
  std::int64_t first = 0;
  for (const auto& e : data) first += (e.point == 0);
  const double p = 0.25;
  const double sigma = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(static_cast<double>(first) / n - p) <= 4 * sigma);
}

TEST_CASE("unnormalized distributions are rejected") {
  DiscreteDistribution bad;
  bad.atoms = {{0, 0, Rat64(1, 2)}, {1, 1, Rat64(1, 3)}};
  Rng rng(1);
  CHECK_THROWS_AS(sample_iid(bad, 3, rng), std::domain_error);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.d = 4;
  cfg.m = 8;
  cfg.u = 8;
  CHECK_NOTHROW(cfg.validate());
  cfg.u = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.u = 8;
  cfg.delta = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.delta = 0.05;
  cfg.epsilon = Rat64(0, 1);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rat64("1/1024") == Rat64(1, 1024));
  CHECK(parse_rat64("0.25") == Rat64(1, 4));
  CHECK(parse_rat64("1e-3") == Rat64(1, 1000));
  CHECK(parse_rat64("3") == Rat64(3, 1));
  CHECK(parse_rat64("-0.5") == Rat64(-1, 2));
  CHECK(parse_rat64("2.5e2") == Rat64(250, 1));
  CHECK_THROWS(parse_rat64("abc"));
  CHECK_THROWS(parse_rat64(""));
}

TEST_CASE("counter rng streams are stable per (seed, trial)") {
  Rng a = Rng::for_trial(42, 7);
  Rng b = Rng::for_trial(42, 7);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c = Rng::for_trial(42, 8);
  CHECK(Rng::for_trial(42, 7).next_u64() != c.next_u64());
}

}  // TEST_SUITE
