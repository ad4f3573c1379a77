#pragma once

#include <cstdint>
#include <vector>

#include "translab/rational.hpp"
#include "translab/rng.hpp"

namespace translab {

// The abstract domain is a fixed set of d shattered points; points are just
// their indices. No construction in scope needs real-vector features.
using PointId = std::int32_t;

struct LabeledExample {
  PointId point = 0;
  std::uint8_t label = 0;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
  friend auto operator<=>(const LabeledExample&, const LabeledExample&) = default;
};

// Ordered multiset of labeled examples. Order is significant and duplicates
// are allowed; realizable datasets carry at most one label per point.
using Dataset = std::vector<LabeledExample>;

// The unlabeled projection of a dataset (drops labels, keeps order).
std::vector<PointId> unlabeled_view(const Dataset& data);

// A permutation-induced train/test partition of a size-N dataset:
// training items sit at permutation[0..m), test items at permutation[m..N).
struct Split {
  std::vector<std::int32_t> permutation;
  std::int64_t m = 0;
  std::int64_t u = 0;
};

// Draws a uniformly random split of [0, n) with m training items.
Split draw_split(std::int64_t n, std::int64_t m, Rng& rng);

void apply_split(const Dataset& population, const Split& split, Dataset& train,
                 Dataset& test);

// (Z_m, Z_u) induced by a uniformly random permutation of pop.
// Requires 1 <= m < |pop|.
std::pair<Dataset, Dataset> split_without_replacement(const Dataset& pop,
                                                      std::int64_t m, Rng& rng);

struct ExperimentConfig {
  int d = 2;
  std::int64_t m = 1;
  std::int64_t u = 1;
  Rat64 epsilon{1, 32};   // accuracy; err >= epsilon events live on the 1/u grid
  double delta = 0.05;    // confidence
  std::int64_t trials = 10000;
  std::uint64_t master_seed = 1;
  int threads = 1;

  std::int64_t population_size() const { return m + u; }
  void validate() const;  // throws std::invalid_argument
};

}  // namespace translab
