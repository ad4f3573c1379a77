#pragma once

#include <cstdint>
#include <vector>

#include "translab/core.hpp"

namespace translab {

// A binary labeling of the d-point domain. `code` packs the labels with
// labels[0] as the most significant bit, so the canonical order used for
// tie-breaking everywhere is plain integer order on `code`.
struct Hypothesis {
  std::uint32_t code = 0;
  std::int32_t d = 0;

  int label(PointId j) const { return (code >> (d - 1 - j)) & 1u; }

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
  friend auto operator<=>(const Hypothesis&, const Hypothesis&) = default;
};

Hypothesis make_hypothesis(const std::vector<std::uint8_t>& labels);

// Finite hypothesis class over the d-point domain. Members are deduplicated
// and sorted canonically.
struct HypothesisClass {
  std::int32_t d = 0;
  std::vector<Hypothesis> members;
  bool full = false;  // contains all 2^d labelings

  std::size_t size() const { return members.size(); }
};

HypothesisClass make_class(std::int32_t d, std::vector<Hypothesis> members);

inline constexpr int kMaxFullClassDim = 20;

// All 2^d labelings. Requires 1 <= d <= kMaxFullClassDim.
HypothesisClass full_class(int d);

// True iff every labeling of `subset` is realized by some member.
// The empty set is vacuously shattered.
bool shatters(const HypothesisClass& cls, const std::vector<PointId>& subset);

// Largest shattered subset size, by exhaustive search over subsets.
int vc_dimension(const HypothesisClass& cls);

// All members with zero empirical error on data; may be empty.
std::vector<Hypothesis> consistent_set(const HypothesisClass& cls, const Dataset& data);

// Fraction of data mispredicted by h, exact on the 1/|data| grid.
// Throws std::domain_error on an empty dataset.
Rat64 empirical_error(const Hypothesis& h, const Dataset& data);

// Number of mispredicted items (the numerator of empirical_error).
std::int64_t disagreement_count(const Hypothesis& h, const Dataset& data);

// True iff some member of cls is consistent with data.
bool is_realizable(const Dataset& data, const HypothesisClass& cls);

}  // namespace translab
