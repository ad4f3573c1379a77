#include "translab/hypothesis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace translab {

Hypothesis make_hypothesis(const std::vector<std::uint8_t>& labels) {
  const int d = static_cast<int>(labels.size());
  if (d < 1 || d > kMaxFullClassDim) throw std::domain_error("hypothesis: bad dimension");
  std::uint32_t code = 0;
  for (int j = 0; j < d; ++j) {
    if (labels[j] > 1) throw std::domain_error("hypothesis: labels must be bits");
    code |= static_cast<std::uint32_t>(labels[j]) << (d - 1 - j);
  }
  return Hypothesis{code, d};
}

HypothesisClass make_class(std::int32_t d, std::vector<Hypothesis> members) {
  if (members.empty()) throw std::domain_error("class: must be non-empty");
  for (const auto& h : members)
    if (h.d != d) throw std::domain_error("class: member dimension mismatch");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  HypothesisClass cls;
  cls.d = d;
  cls.members = std::move(members);
  cls.full = cls.members.size() == (std::size_t{1} << d);
  return cls;
}

HypothesisClass full_class(int d) {
  if (d < 1 || d > kMaxFullClassDim)
    throw std::domain_error("full_class: d must be in [1, 20]");
  HypothesisClass cls;
  cls.d = d;
  cls.full = true;
  cls.members.reserve(std::size_t{1} << d);
  for (std::uint32_t code = 0; code < (1u << d); ++code)
    cls.members.push_back(Hypothesis{code, d});
  return cls;
}

bool shatters(const HypothesisClass& cls, const std::vector<PointId>& subset) {
  const int s = static_cast<int>(subset.size());
  for (PointId p : subset)
    if (p < 0 || p >= cls.d) throw std::domain_error("shatters: point outside domain");
  if (s == 0) return true;
  if (s > 20) return false;  // cannot shatter more patterns than members anyway
  if ((std::size_t{1} << s) > cls.members.size()) return false;
  std::vector<bool> seen(std::size_t{1} << s, false);
  std::size_t distinct = 0;
  for (const auto& h : cls.members) {
    std::uint32_t pattern = 0;
    for (int j = 0; j < s; ++j) pattern |= static_cast<std::uint32_t>(h.label(subset[j])) << j;
    if (!seen[pattern]) {
      seen[pattern] = true;
      if (++distinct == (std::size_t{1} << s)) return true;
    }
  }
  return false;
}

int vc_dimension(const HypothesisClass& cls) {
  if (cls.d > kMaxFullClassDim) throw std::domain_error("vc_dimension: d must be <= 20");
  if (cls.full) return cls.d;
  int best = 0;
  const std::uint32_t all = 1u << cls.d;
  for (std::uint32_t mask = 1; mask < all; ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    std::vector<PointId> subset;
    subset.reserve(size);
    for (int j = 0; j < cls.d; ++j)
      if (mask & (1u << j)) subset.push_back(j);
    if (shatters(cls, subset)) best = size;
  }
  return best;
}

std::int64_t disagreement_count(const Hypothesis& h, const Dataset& data) {
  std::int64_t wrong = 0;
  for (const auto& ex : data) {
    if (ex.point < 0 || ex.point >= h.d)
      throw std::domain_error("empirical_error: point outside hypothesis domain");
    wrong += (h.label(ex.point) != ex.label);
  }
  return wrong;
}

Rat64 empirical_error(const Hypothesis& h, const Dataset& data) {
  if (data.empty()) throw std::domain_error("err undefined on empty test set");
  return Rat64(disagreement_count(h, data), static_cast<std::int64_t>(data.size()));
}

std::vector<Hypothesis> consistent_set(const HypothesisClass& cls, const Dataset& data) {
  std::vector<Hypothesis> out;
  for (const auto& h : cls.members)
    if (disagreement_count(h, data) == 0) out.push_back(h);
  return out;
}

bool is_realizable(const Dataset& data, const HypothesisClass& cls) {
  if (data.empty()) return true;
  if (cls.full) {
    // One label per point suffices; the full class realizes any labeling.
    std::vector<int> seen(cls.d, -1);
    for (const auto& ex : data) {
      if (ex.point < 0 || ex.point >= cls.d) return false;
      if (seen[ex.point] == -1) seen[ex.point] = ex.label;
      else if (seen[ex.point] != ex.label) return false;
    }
    return true;
  }
  for (const auto& h : cls.members)
    if (disagreement_count(h, data) == 0) return true;
  return false;
}

}  // namespace translab
