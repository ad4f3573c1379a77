#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace translab {

// One (n, k, i) triple of the binomial-ratio lemma with every bound
// evaluated; `holds` covers the full chain
//   ratio >= max{(1-(n-k)/(n-i+1))^i, (1-i/(k+1))^{n-k}}
//         >= exp(-(n-k) i / (k-i+1))
// and ratio <= min{(1-(n-k)/n)^i, (1-i/n)^{n-k}}.
struct LemmaRow {
  int n = 0, k = 0, i = 0;
  double ratio = 0;
  double lower = 0;
  double exp_lower = 0;
  double upper = 0;
  bool holds = false;
};

struct LemmaReport {
  std::int64_t triples_checked = 0;
  std::vector<LemmaRow> violations;  // empty on success
};

// Checks all 0 <= i <= k <= n <= n_max in exact big-integer arithmetic
// (the exp step compared in log space with a margin argument; exact
// equality cases short-circuited). Requires n_max <= 500.
LemmaReport verify_lemma_binomial_ratio(int n_max);

// Streams one row per triple to `emit` while checking (for the CLI report).
LemmaReport verify_lemma_binomial_ratio(int n_max,
                                        const std::function<void(const LemmaRow&)>& emit);

// A standalone numeric inequality appearing in the proofs, re-evaluated in
// high precision.
struct ConstantCheck {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool pass = false;  // lhs > rhs (or >= where stated)
};

std::vector<ConstantCheck> verify_proof_constants();

}  // namespace translab
