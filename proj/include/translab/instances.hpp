#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "translab/core.hpp"
#include "translab/prob.hpp"

namespace translab {

// A TLSI population: counts[j] copies of (x_j, b[j]). Realizable by
// construction (one label per point).
struct PopulationSpec {
  std::vector<std::uint8_t> b;       // labels, length d
  std::vector<std::int64_t> counts;  // copies per point, length d, sum N

  int d() const { return static_cast<int>(b.size()); }
  std::int64_t total() const;
  void validate() const;  // throws std::domain_error
};

// A TLSII law supported on labeled atoms (x_j, label_j) with exact masses.
struct Atom {
  PointId point = 0;
  std::uint8_t label = 0;
  Rat64 mass;
};

struct DiscreteDistribution {
  std::vector<Atom> atoms;

  void validate() const;  // masses sum to 1, one label per point
  std::vector<double> masses() const;
};

// n iid draws from P. Requires P normalized.
Dataset sample_iid(const DiscreteDistribution& P, std::int64_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Hard-instance generators
// ---------------------------------------------------------------------------

// Counts (Delta, ..., Delta, N - (d-1)Delta) for an explicitly chosen Delta.
std::vector<std::int64_t> tlsi_hard_counts_delta(std::int64_t N, int d,
                                                 std::int64_t delta);

// Delta = ceil(7 N eps / (d-1)), the probability-bound choice.
// Throws when (d-1) Delta > N ("Theorem 1 preconditions violated").
std::vector<std::int64_t> tlsi_hard_counts_prob(std::int64_t N, int d, Rat64 eps);

// Delta = floor(N/m), the expectation-bound choice. Requires m >= d-1.
std::vector<std::int64_t> tlsi_hard_counts_expect(std::int64_t N, int d,
                                                  std::int64_t m);

// Ordered dataset in block layout: the counts[0] copies of (x_0, b_0) first,
// then the counts[1] copies of (x_1, b_1), and so on.
Dataset materialize_population(const PopulationSpec& spec);

// Point masses (1/m, ..., 1/m, 1 - (d-1)/m) on atoms (x_j, b_j).
// Requires m >= d-1.
DiscreteDistribution tlsii_hard_distribution_expect(int d, std::int64_t m,
                                                    const std::vector<std::uint8_t>& b);

// Point masses (p, ..., p, 1 - (d-1)p). Requires 0 < p <= 1/(d-1).
DiscreteDistribution tlsii_hard_distribution_p(int d, Rat64 p,
                                               const std::vector<std::uint8_t>& b);

// d iid fair bits.
std::vector<std::uint8_t> random_labeling(int d, Rng& rng);

// Multiplicity k_j of each point in the test side of the split.
MultiplicityProfile test_multiplicities(const PopulationSpec& spec, const Split& split);

// ---------------------------------------------------------------------------
// Families and serialization
// ---------------------------------------------------------------------------

enum class Setting { TLSI, TLSII };

std::string to_string(Setting s);

// An adversarial instance family: the labeling b is redrawn uniformly per
// trial (the probabilistic-method average) unless fixed_b is set.
struct InstanceFamily {
  Setting setting = Setting::TLSI;
  int d = 2;
  std::vector<std::int64_t> counts;             // TLSI: copies per point
  std::vector<Rat64> masses;                    // TLSII: mass per point
  std::optional<std::vector<std::uint8_t>> fixed_b;

  PopulationSpec population_for(const std::vector<std::uint8_t>& b) const;
  DiscreteDistribution distribution_for(const std::vector<std::uint8_t>& b) const;
  void validate() const;
};

// JSON wire format:
//   {"setting":"TLSI","d":3,"b":[0,1,0],"i":[1,2,1]}
//   {"setting":"TLSII","d":3,"b":[0,1,0],"p":0.25}
std::string instance_to_json(const PopulationSpec& spec);
std::string instance_to_json(const DiscreteDistribution& dist, int d);
InstanceFamily instance_family_from_json(const std::string& text);

}  // namespace translab
