#pragma once

#include <memory>
#include <string>
#include <vector>

#include "translab/hypothesis.hpp"

namespace translab {

enum class LearnerKind {
  erm,
  majority_of_erms,
  constant,
  random_guess,
  ignore_unlabeled_wrapper,
};

struct LearnerSpec {
  LearnerKind kind = LearnerKind::erm;
  int constant_bit = 0;                          // for constant
  std::shared_ptr<const LearnerSpec> inner;      // for ignore_unlabeled_wrapper

  static LearnerSpec erm() { return make(LearnerKind::erm); }
  static LearnerSpec majority() { return make(LearnerKind::majority_of_erms); }
  static LearnerSpec constant(int bit) {
    LearnerSpec s = make(LearnerKind::constant);
    s.constant_bit = bit;
    return s;
  }
  static LearnerSpec random_guess() { return make(LearnerKind::random_guess); }
  static LearnerSpec ignoring_unlabeled(LearnerSpec wrapped) {
    LearnerSpec s = make(LearnerKind::ignore_unlabeled_wrapper);
    s.inner = std::make_shared<const LearnerSpec>(std::move(wrapped));
    return s;
  }
  static LearnerSpec make(LearnerKind k) {
    LearnerSpec s;
    s.kind = k;
    return s;
  }

  bool deterministic() const;
  std::string name() const;
};

std::string learner_to_json(const LearnerSpec& spec);
LearnerSpec learner_from_json(const std::string& text);

// Canonically-smallest empirical risk minimizer over the class. Under
// realizable training data the returned hypothesis has zero training error;
// non-realizable data still yields a minimizer.
Hypothesis erm(const HypothesisClass& cls, const Dataset& train);

// Majority vote over an ensemble of ERMs trained on recursively constructed
// subsamples: a sample S with |S| <= max(4, 3d) contributes erm(S); otherwise
// S0 = first |S| - 3*floor(|S|/4) items, S1,S2,S3 the consecutive
// floor(|S|/4)-blocks, and the ensembles of S0+S2+S3, S0+S1+S3, S0+S1+S2 are
// pooled. Prediction at each point is the ensemble majority, ties -> 0; the
// majority vector is projected to the nearest class member (Hamming distance,
// canonical tie-break) when the class is not full.
Hypothesis majority_of_erms(const HypothesisClass& cls, const Dataset& train);

// Uniform dispatch for all learner kinds. Deterministic for everything but
// random_guess, which consumes the rng. The unlabeled argument is accepted
// for interface parity; no supervised learner in scope reads it.
Hypothesis run_learner(const LearnerSpec& spec, const HypothesisClass& cls,
                       const Dataset& train, const std::vector<PointId>& unlabeled,
                       Rng& rng);

// Nearest class member to an arbitrary labeling (Hamming distance, canonical
// tie-break).
Hypothesis project_to_class(const HypothesisClass& cls, std::uint32_t code);

}  // namespace translab
