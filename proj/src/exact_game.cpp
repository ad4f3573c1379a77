#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "translab/estimators.hpp"

namespace translab {

namespace {

constexpr std::int64_t kTableCap = 10'000'000;  // assignment-space cap
constexpr std::int64_t kOutcomeCap = 1'000'000;

// One enumerated sample outcome: what the learner observes plus the labeled
// test side and the outcome probability.
struct Outcome {
  BigRat prob;
  Observation obs;
  Dataset test;
};

std::vector<Outcome> enumerate_tlsi(const PopulationSpec& spec, std::int64_t m,
                                    std::int64_t u, bool observe_unlabeled) {
  spec.validate();
  const std::int64_t N = spec.total();
  if (N != m + u) throw std::domain_error("exact oracle: population size must be m + u");
  if (N > 8) throw std::length_error("exact oracle: TLSI enumeration needs N <= 8 (N! permutations)");
  const Dataset pop = materialize_population(spec);
  std::vector<std::int32_t> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt factorial = 1;
  for (std::int64_t i = 2; i <= N; ++i) factorial *= i;
  const BigRat each(1, factorial);
  std::vector<Outcome> outs;
  do {
    Outcome o;
    o.prob = each;
    o.obs.train.reserve(m);
    for (std::int64_t i = 0; i < m; ++i) o.obs.train.push_back(pop[perm[i]]);
    o.test.reserve(u);
    for (std::int64_t i = m; i < N; ++i) o.test.push_back(pop[perm[i]]);
    if (observe_unlabeled) o.obs.unlabeled = unlabeled_view(o.test);
    outs.push_back(std::move(o));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return outs;
}

std::vector<Outcome> enumerate_tlsii(const DiscreteDistribution& dist, std::int64_t m,
                                     std::int64_t u, bool observe_unlabeled) {
  dist.validate();
  const std::int64_t n = m + u;
  const std::int64_t atoms = static_cast<std::int64_t>(dist.atoms.size());
  double space = 1;
  for (std::int64_t i = 0; i < n; ++i) space *= static_cast<double>(atoms);
  if (space > static_cast<double>(kOutcomeCap))
    throw std::length_error("exact oracle: TLSII outcome space " + std::to_string(space) +
                            " exceeds cap " + std::to_string(kOutcomeCap));
  std::vector<std::size_t> pick(n, 0);
  std::vector<Outcome> outs;
  for (;;) {
    Outcome o;
    o.prob = 1;
    bool possible = true;
    for (std::int64_t i = 0; i < n; ++i) {
      const Atom& a = dist.atoms[pick[i]];
      if (a.mass.num == 0) {
        possible = false;
        break;
      }
      o.prob *= a.mass.to_big();
      if (i < m) o.obs.train.push_back({a.point, a.label});
      else o.test.push_back({a.point, a.label});
    }
    if (possible) {
      if (observe_unlabeled) o.obs.unlabeled = unlabeled_view(o.test);
      outs.push_back(std::move(o));
    }
    // odometer
    std::int64_t i = 0;
    for (; i < n; ++i) {
      if (++pick[i] < static_cast<std::size_t>(atoms)) break;
      pick[i] = 0;
    }
    if (i == n) break;
  }
  return outs;
}

std::vector<Outcome> enumerate_instance(const TinyInstance& inst, std::int64_t m,
                                        std::int64_t u, bool observe_unlabeled) {
  if (std::holds_alternative<PopulationSpec>(inst))
    return enumerate_tlsi(std::get<PopulationSpec>(inst), m, u, observe_unlabeled);
  return enumerate_tlsii(std::get<DiscreteDistribution>(inst), m, u, observe_unlabeled);
}

BigRat transductive_risk(const Hypothesis& h, const Dataset& test, RiskMode mode,
                         const Rat64& eps) {
  if (test.empty()) return BigRat(0);
  const Rat64 err = empirical_error(h, test);
  if (mode == RiskMode::expectation) return err.to_big();
  return err >= eps ? BigRat(1) : BigRat(0);
}

BigRat population_risk(const Hypothesis& h, const DiscreteDistribution& dist) {
  BigRat total = 0;
  for (const auto& a : dist.atoms)
    if (h.label(a.point) != a.label) total += a.mass.to_big();
  return total;
}

// The core min-max solver. `risks[obs][sharer][h]` holds the probability-
// weighted risk contribution of answering obs with hypothesis h against each
// family member that can produce obs. Unambiguous observations (one sharer)
// are settled pointwise; ambiguous ones keep only Pareto-minimal choices and
// are searched exhaustively with branch-and-bound.
struct GameSolver {
  std::size_t n_hyp = 0;
  std::size_t n_family = 0;
  std::map<Observation, std::map<std::size_t, std::vector<BigRat>>> contrib;

  void add(const Observation& obs, std::size_t family_index, std::size_t h, BigRat value) {
    auto& per_f = contrib[obs];
    auto& vec = per_f[family_index];
    if (vec.empty()) vec.assign(n_hyp, BigRat(0));
    vec[h] += std::move(value);
  }

  ExactMinimaxResult solve(const HypothesisClass& cls) {
    std::vector<BigRat> base(n_family, BigRat(0));
    struct AmbiguousObs {
      const Observation* obs;
      std::vector<std::size_t> sharers;
      std::vector<std::pair<std::size_t, std::vector<BigRat>>> choices;  // hypothesis, vector
    };
    std::vector<AmbiguousObs> ambiguous;
    ExactMinimaxResult result;
    result.instance_family_size = n_family;

    for (const auto& [obs, per_f] : contrib) {
      if (per_f.size() == 1) {
        const auto& [fi, vec] = *per_f.begin();
        std::size_t best = 0;
        for (std::size_t h = 1; h < n_hyp; ++h)
          if (vec[h] < vec[best]) best = h;
        base[fi] += vec[best];
        result.optimal_learner_table[obs] = cls.members[best];
        continue;
      }
      AmbiguousObs amb;
      amb.obs = &obs;
      for (const auto& [fi, _] : per_f) amb.sharers.push_back(fi);
      std::vector<std::vector<BigRat>> vectors(n_hyp);
      for (std::size_t h = 0; h < n_hyp; ++h) {
        vectors[h].reserve(amb.sharers.size());
        for (const std::size_t fi : amb.sharers) vectors[h].push_back(per_f.at(fi)[h]);
      }
      for (std::size_t h = 0; h < n_hyp; ++h) {
        bool keep = true;
        for (std::size_t g = 0; g < n_hyp && keep; ++g) {
          if (g == h) continue;
          bool all_le = true, some_lt = false;
          for (std::size_t c = 0; c < amb.sharers.size(); ++c) {
            if (vectors[g][c] > vectors[h][c]) { all_le = false; break; }
            if (vectors[g][c] < vectors[h][c]) some_lt = true;
          }
          if (all_le && some_lt) keep = false;                  // strictly dominated
          if (all_le && !some_lt && g < h) keep = false;        // duplicate, keep smallest
        }
        if (keep) amb.choices.emplace_back(h, vectors[h]);
      }
      ambiguous.push_back(std::move(amb));
    }

    double space = 1;
    for (const auto& amb : ambiguous) space *= static_cast<double>(amb.choices.size());
    if (space > static_cast<double>(kTableCap))
      throw std::length_error("exact oracle: learner-table space " + std::to_string(space) +
                              " exceeds cap " + std::to_string(kTableCap));

    std::vector<std::size_t> pick(ambiguous.size(), 0), best_pick;
    BigRat best_value(-1);
    std::vector<BigRat> totals = base;
    auto current_max = [&]() {
      BigRat mx = totals.empty() ? BigRat(0) : totals[0];
      for (const auto& t : totals) mx = std::max(mx, t);
      return mx;
    };
    // DFS over ambiguous-observation choices; totals only grow, so any
    // partial max already at/above the incumbent can be pruned.
    std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
      if (best_value >= 0 && current_max() >= best_value) return;
      if (depth == ambiguous.size()) {
        const BigRat v = current_max();
        if (best_value < 0 || v < best_value) {
          best_value = v;
          best_pick = pick;
        }
        return;
      }
      const auto& amb = ambiguous[depth];
      for (std::size_t c = 0; c < amb.choices.size(); ++c) {
        pick[depth] = c;
        for (std::size_t s = 0; s < amb.sharers.size(); ++s)
          totals[amb.sharers[s]] += amb.choices[c].second[s];
        dfs(depth + 1);
        for (std::size_t s = 0; s < amb.sharers.size(); ++s)
          totals[amb.sharers[s]] -= amb.choices[c].second[s];
      }
    };
    dfs(0);

    result.value = best_value;
    for (std::size_t i = 0; i < ambiguous.size(); ++i)
      result.optimal_learner_table[*ambiguous[i].obs] =
          cls.members[ambiguous[i].choices[best_pick[i]].first];
    return result;
  }
};

}  // namespace

ExactMinimaxResult exact_minimax_tiny(const HypothesisClass& cls,
                                      const std::vector<TinyInstance>& family,
                                      std::int64_t m, std::int64_t u, RiskMode mode,
                                      Rat64 eps) {
  if (family.empty()) throw std::domain_error("exact oracle: empty family");
  GameSolver solver;
  solver.n_hyp = cls.members.size();
  solver.n_family = family.size();
  for (std::size_t fi = 0; fi < family.size(); ++fi) {
    for (const Outcome& o : enumerate_instance(family[fi], m, u, /*observe_unlabeled=*/true)) {
      for (std::size_t h = 0; h < cls.members.size(); ++h)
        solver.add(o.obs, fi, h, o.prob * transductive_risk(cls.members[h], o.test, mode, eps));
    }
  }
  return solver.solve(cls);
}

BigRat exact_learner_risk_tiny(const LearnerSpec& learner, const HypothesisClass& cls,
                               const TinyInstance& instance, std::int64_t m,
                               std::int64_t u, RiskMode mode, Rat64 eps) {
  if (!learner.deterministic())
    throw std::domain_error("exact learner risk: learner must be deterministic");
  Rng unused(0);
  BigRat total = 0;
  for (const Outcome& o : enumerate_instance(instance, m, u, /*observe_unlabeled=*/true)) {
    const Hypothesis h = run_learner(learner, cls, o.obs.train, o.obs.unlabeled, unused);
    total += o.prob * transductive_risk(h, o.test, mode, eps);
  }
  return total;
}

SslSlResult ssl_vs_sl_experiment(const HypothesisClass& cls,
                                 const std::vector<DiscreteDistribution>& family,
                                 std::int64_t m, std::int64_t u) {
  if (family.empty()) throw std::domain_error("ssl experiment: empty family");
  SslSlResult out;

  auto solve_inductive = [&](bool observe_unlabeled) {
    GameSolver solver;
    solver.n_hyp = cls.members.size();
    solver.n_family = family.size();
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
      std::vector<BigRat> risk_of(cls.members.size());
      for (std::size_t h = 0; h < cls.members.size(); ++h)
        risk_of[h] = population_risk(cls.members[h], family[fi]);
      for (const Outcome& o : enumerate_tlsii(family[fi], m, u, observe_unlabeled))
        for (std::size_t h = 0; h < cls.members.size(); ++h)
          solver.add(o.obs, fi, h, o.prob * risk_of[h]);
    }
    return solver.solve(cls).value;
  };

  if (u > 0) {
    std::vector<TinyInstance> insts(family.begin(), family.end());
    out.mII = exact_minimax_tiny(cls, insts, m, u, RiskMode::expectation).value;
  } else {
    out.mII = 0;  // no test points; the transductive objective is vacuous
  }
  out.mSSL = solve_inductive(/*observe_unlabeled=*/true);
  out.mSL = solve_inductive(/*observe_unlabeled=*/false);

  if (!(out.mII <= out.mSSL && out.mSSL <= out.mSL))
    throw std::logic_error("ssl experiment: chain mII <= mSSL <= mSL violated");
  return out;
}

}  // namespace translab
