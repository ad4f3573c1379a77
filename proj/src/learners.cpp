#include "translab/learners.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "json.hpp"

namespace translab {

using nlohmann::json;

bool LearnerSpec::deterministic() const {
  if (kind == LearnerKind::random_guess) return false;
  if (kind == LearnerKind::ignore_unlabeled_wrapper) return inner && inner->deterministic();
  return true;
}

std::string LearnerSpec::name() const {
  switch (kind) {
    case LearnerKind::erm: return "erm";
    case LearnerKind::majority_of_erms: return "majority_of_erms";
    case LearnerKind::constant: return "constant(" + std::to_string(constant_bit) + ")";
    case LearnerKind::random_guess: return "random_guess";
    case LearnerKind::ignore_unlabeled_wrapper:
      return "ignore_unlabeled(" + (inner ? inner->name() : std::string("?")) + ")";
  }
  return "?";
}

std::string learner_to_json(const LearnerSpec& spec) {
  json j;
  switch (spec.kind) {
    case LearnerKind::erm: j["kind"] = "erm"; break;
    case LearnerKind::majority_of_erms: j["kind"] = "majority_of_erms"; break;
    case LearnerKind::constant:
      j["kind"] = "constant";
      j["bit"] = spec.constant_bit;
      break;
    case LearnerKind::random_guess: j["kind"] = "random_guess"; break;
    case LearnerKind::ignore_unlabeled_wrapper:
      j["kind"] = "ignore_unlabeled_wrapper";
      j["inner"] = json::parse(learner_to_json(*spec.inner));
      break;
  }
  return j.dump();
}

LearnerSpec learner_from_json(const std::string& text) {
  const json j = json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "erm") return LearnerSpec::erm();
  if (kind == "majority_of_erms") return LearnerSpec::majority();
  if (kind == "constant") return LearnerSpec::constant(j.at("bit").get<int>());
  if (kind == "random_guess") return LearnerSpec::random_guess();
  if (kind == "ignore_unlabeled_wrapper")
    return LearnerSpec::ignoring_unlabeled(learner_from_json(j.at("inner").dump()));
  throw std::invalid_argument("learner json: unknown kind " + kind);
}

Hypothesis erm(const HypothesisClass& cls, const Dataset& train) {
  if (cls.members.empty()) throw std::domain_error("erm: empty class");
  if (cls.full) {
    // Training error decomposes per point for the full class: predict the
    // majority label at each point, ties and unseen points -> 0, which is
    // exactly the canonically-smallest minimizer.
    std::vector<std::int32_t> ones(cls.d, 0), zeros(cls.d, 0);
    for (const auto& ex : train) {
      if (ex.point < 0 || ex.point >= cls.d) throw std::domain_error("erm: point outside domain");
      if (ex.label) ++ones[ex.point];
      else ++zeros[ex.point];
    }
    std::uint32_t code = 0;
    for (int j = 0; j < cls.d; ++j)
      if (ones[j] > zeros[j]) code |= 1u << (cls.d - 1 - j);
    return Hypothesis{code, cls.d};
  }
  const Hypothesis* best = nullptr;
  std::int64_t best_wrong = 0;
  for (const auto& h : cls.members) {
    const std::int64_t wrong = disagreement_count(h, train);
    if (!best || wrong < best_wrong) {  // members are canonically sorted
      best = &h;
      best_wrong = wrong;
    }
  }
  return *best;
}

namespace {

void collect_erm_ensemble(const HypothesisClass& cls, const Dataset& sample,
                          std::vector<Hypothesis>& ensemble) {
  const std::int64_t n = static_cast<std::int64_t>(sample.size());
  const std::int64_t threshold = std::max<std::int64_t>(4, 3 * cls.d);
  if (n <= threshold) {
    ensemble.push_back(erm(cls, sample));
    return;
  }
  const std::int64_t q = n / 4;
  const auto head = sample.begin();
  const Dataset s0(head, head + (n - 3 * q));
  const Dataset s1(head + (n - 3 * q), head + (n - 2 * q));
  const Dataset s2(head + (n - 2 * q), head + (n - q));
  const Dataset s3(head + (n - q), sample.end());
  auto concat = [](const Dataset& a, const Dataset& b, const Dataset& c) {
    Dataset out;
    out.reserve(a.size() + b.size() + c.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), c.begin(), c.end());
    return out;
  };
  collect_erm_ensemble(cls, concat(s0, s2, s3), ensemble);
  collect_erm_ensemble(cls, concat(s0, s1, s3), ensemble);
  collect_erm_ensemble(cls, concat(s0, s1, s2), ensemble);
}

}  // namespace

Hypothesis majority_of_erms(const HypothesisClass& cls, const Dataset& train) {
  if (cls.members.empty()) throw std::domain_error("majority_of_erms: empty class");
  std::vector<Hypothesis> ensemble;
  collect_erm_ensemble(cls, train, ensemble);
  std::uint32_t code = 0;
  for (int j = 0; j < cls.d; ++j) {
    std::size_t votes = 0;
    for (const auto& h : ensemble) votes += h.label(j);
    if (2 * votes > ensemble.size()) code |= 1u << (cls.d - 1 - j);  // ties -> 0
  }
  if (cls.full) return Hypothesis{code, cls.d};
  return project_to_class(cls, code);
}

Hypothesis project_to_class(const HypothesisClass& cls, std::uint32_t code) {
  const Hypothesis* best = nullptr;
  int best_dist = cls.d + 1;
  for (const auto& h : cls.members) {
    const int dist = std::popcount(h.code ^ code);
    if (dist < best_dist) {  // canonical order breaks ties
      best = &h;
      best_dist = dist;
    }
  }
  return *best;
}

Hypothesis run_learner(const LearnerSpec& spec, const HypothesisClass& cls,
                       const Dataset& train, const std::vector<PointId>& unlabeled,
                       Rng& rng) {
  switch (spec.kind) {
    case LearnerKind::erm:
      return erm(cls, train);
    case LearnerKind::majority_of_erms:
      return majority_of_erms(cls, train);
    case LearnerKind::constant: {
      const std::uint32_t code = spec.constant_bit ? (1u << cls.d) - 1u : 0u;
      return project_to_class(cls, code);
    }
    case LearnerKind::random_guess:
      return cls.members[rng.below(cls.members.size())];
    case LearnerKind::ignore_unlabeled_wrapper: {
      if (!spec.inner) throw std::invalid_argument("learner: wrapper without inner spec");
      const std::vector<PointId> none;
      (void)unlabeled;
      return run_learner(*spec.inner, cls, train, none, rng);
    }
  }
  throw std::invalid_argument("learner: unknown kind");
}

}  // namespace translab
