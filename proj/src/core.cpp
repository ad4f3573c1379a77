#include "translab/core.hpp"

#include <numeric>
#include <stdexcept>

namespace translab {

std::vector<PointId> unlabeled_view(const Dataset& data) {
  std::vector<PointId> points;
  points.reserve(data.size());
  for (const auto& ex : data) points.push_back(ex.point);
  return points;
}

Split draw_split(std::int64_t n, std::int64_t m, Rng& rng) {
  if (m < 1 || m >= n) throw std::domain_error("split: need 1 <= m < N");
  Split s;
  s.m = m;
  s.u = n - m;
  s.permutation.resize(n);
  std::iota(s.permutation.begin(), s.permutation.end(), 0);
  // Fisher-Yates
  for (std::int64_t i = n - 1; i > 0; --i) {
    const std::int64_t j = static_cast<std::int64_t>(rng.below(i + 1));
    std::swap(s.permutation[i], s.permutation[j]);
  }
  return s;
}

void apply_split(const Dataset& population, const Split& split, Dataset& train,
                 Dataset& test) {
  const std::int64_t n = static_cast<std::int64_t>(population.size());
  if (split.m + split.u != n || static_cast<std::int64_t>(split.permutation.size()) != n)
    throw std::domain_error("split: size mismatch with population");
  train.clear();
  test.clear();
  train.reserve(split.m);
  test.reserve(split.u);
  for (std::int64_t i = 0; i < split.m; ++i) train.push_back(population[split.permutation[i]]);
  for (std::int64_t i = split.m; i < n; ++i) test.push_back(population[split.permutation[i]]);
}

std::pair<Dataset, Dataset> split_without_replacement(const Dataset& pop,
                                                      std::int64_t m, Rng& rng) {
  const std::int64_t n = static_cast<std::int64_t>(pop.size());
  if (m < 1 || m >= n) throw std::domain_error("split_without_replacement: need 1 <= m < |pop|");
  const Split s = draw_split(n, m, rng);
  std::pair<Dataset, Dataset> out;
  apply_split(pop, s, out.first, out.second);
  return out;
}

void ExperimentConfig::validate() const {
  if (d < 1) throw std::invalid_argument("config: d >= 1 required");
  if (m < 1 || u < 1) throw std::invalid_argument("config: m >= 1 and u >= 1 required");
  if (epsilon.num <= 0 || epsilon > Rat64::one())
    throw std::invalid_argument("config: epsilon in (0, 1] required");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("config: delta in (0, 1) required");
  if (trials < 1) throw std::invalid_argument("config: trials >= 1 required");
  if (threads < 1) throw std::invalid_argument("config: threads >= 1 required");
  if (m + u > (std::int64_t{1} << 48)) throw std::invalid_argument("config: N capped at 2^48");
}

}  // namespace translab
