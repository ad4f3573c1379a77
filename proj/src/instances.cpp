#include "translab/instances.hpp"

#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace translab {

using nlohmann::json;

std::int64_t PopulationSpec::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

void PopulationSpec::validate() const {
  if (b.empty() || b.size() != counts.size())
    throw std::domain_error("population: b and counts must have equal length d >= 1");
  for (auto bit : b)
    if (bit > 1) throw std::domain_error("population: labels must be bits");
  for (auto c : counts)
    if (c < 0) throw std::domain_error("population: counts must be nonnegative");
  if (total() > (std::int64_t{1} << 48)) throw std::domain_error("population: N capped at 2^48");
}

void DiscreteDistribution::validate() const {
  if (atoms.empty()) throw std::domain_error("distribution: no atoms");
  BigRat total = 0;
  std::vector<std::pair<PointId, int>> labels;
  for (const auto& a : atoms) {
    if (a.label > 1) throw std::domain_error("distribution: labels must be bits");
    if (a.mass.num < 0) throw std::domain_error("distribution: negative mass");
    total += a.mass.to_big();
    for (const auto& [p, l] : labels)
      if (p == a.point && l != a.label)
        throw std::domain_error("distribution: two labels on one point breaks realizability");
    labels.emplace_back(a.point, a.label);
  }
  if (total != 1) throw std::domain_error("distribution: masses must sum to 1");
}

std::vector<double> DiscreteDistribution::masses() const {
  std::vector<double> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back(a.mass.to_double());
  return out;
}

Dataset sample_iid(const DiscreteDistribution& P, std::int64_t n, Rng& rng) {
  P.validate();
  const auto ms = P.masses();
  Dataset data;
  data.reserve(n);
  for (std::int64_t t = 0; t < n; ++t) {
    double x = rng.next_double();
    std::size_t j = 0;
    for (; j + 1 < ms.size(); ++j) {
      if (x < ms[j]) break;
      x -= ms[j];
    }
    data.push_back({P.atoms[j].point, P.atoms[j].label});
  }
  return data;
}

// ---------------------------------------------------------------------------
// Hard-instance generators
// ---------------------------------------------------------------------------

std::vector<std::int64_t> tlsi_hard_counts_delta(std::int64_t N, int d,
                                                 std::int64_t delta) {
  if (d < 2) throw std::domain_error("hard counts: d >= 2 required");
  if (delta < 1) throw std::domain_error("hard counts: Delta >= 1 required");
  if ((d - 1) * delta > N)
    throw std::domain_error("Theorem 1 preconditions violated: (d-1) Delta > N");
  std::vector<std::int64_t> counts(d, delta);
  counts[d - 1] = N - static_cast<std::int64_t>(d - 1) * delta;
  return counts;
}

std::vector<std::int64_t> tlsi_hard_counts_prob(std::int64_t N, int d, Rat64 eps) {
  if (d < 2) throw std::domain_error("hard counts: d >= 2 required");
  if (eps.num <= 0) throw std::domain_error("hard counts: eps > 0 required");
  // Delta = ceil(7 N eps / (d-1)), computed exactly.
  const __int128 num = static_cast<__int128>(7) * N * eps.num;
  const __int128 den = static_cast<__int128>(eps.den) * (d - 1);
  const auto delta = static_cast<std::int64_t>((num + den - 1) / den);
  return tlsi_hard_counts_delta(N, d, delta);
}

std::vector<std::int64_t> tlsi_hard_counts_expect(std::int64_t N, int d,
                                                  std::int64_t m) {
  if (d < 2) throw std::domain_error("hard counts: d >= 2 required");
  if (m < d - 1) throw std::domain_error("hard counts: m >= d-1 required");
  return tlsi_hard_counts_delta(N, d, N / m);
}

Dataset materialize_population(const PopulationSpec& spec) {
  spec.validate();
  Dataset data;
  data.reserve(spec.total());
  for (int j = 0; j < spec.d(); ++j)
    for (std::int64_t c = 0; c < spec.counts[j]; ++c)
      data.push_back({static_cast<PointId>(j), spec.b[j]});
  return data;
}

DiscreteDistribution tlsii_hard_distribution_expect(int d, std::int64_t m,
                                                    const std::vector<std::uint8_t>& b) {
  if (m < d - 1) throw std::domain_error("P0: m >= d-1 required");
  return tlsii_hard_distribution_p(d, Rat64(1, m), b);
}

DiscreteDistribution tlsii_hard_distribution_p(int d, Rat64 p,
                                               const std::vector<std::uint8_t>& b) {
  if (d < 2) throw std::domain_error("P(p): d >= 2 required");
  if (static_cast<int>(b.size()) != d) throw std::domain_error("P(p): |b| must equal d");
  if (p.num <= 0 || p > Rat64(1, d - 1))
    throw std::domain_error("P(p): need 0 < p <= 1/(d-1)");
  DiscreteDistribution dist;
  dist.atoms.reserve(d);
  for (int j = 0; j + 1 < d; ++j) dist.atoms.push_back({static_cast<PointId>(j), b[j], p});
  // mass 1 - (d-1) p, exactly
  const Rat64 last(p.den - static_cast<std::int64_t>(d - 1) * p.num, p.den);
  dist.atoms.push_back({static_cast<PointId>(d - 1), b[d - 1], last});
  dist.validate();
  return dist;
}

std::vector<std::uint8_t> random_labeling(int d, Rng& rng) {
  if (d < 1) throw std::domain_error("random_labeling: d >= 1 required");
  std::vector<std::uint8_t> b(d);
  for (int j = 0; j < d; ++j) b[j] = static_cast<std::uint8_t>(rng.next_bit());
  return b;
}

MultiplicityProfile test_multiplicities(const PopulationSpec& spec, const Split& split) {
  spec.validate();
  const std::int64_t N = spec.total();
  if (split.m + split.u != N || static_cast<std::int64_t>(split.permutation.size()) != N)
    throw std::domain_error("test_multiplicities: split sized for a different N");
  // Block layout: position -> point by cumulative counts.
  std::vector<std::int64_t> cum(spec.d() + 1, 0);
  for (int j = 0; j < spec.d(); ++j) cum[j + 1] = cum[j] + spec.counts[j];
  MultiplicityProfile k(spec.d(), 0);
  for (std::int64_t i = split.m; i < N; ++i) {
    const std::int64_t pos = split.permutation[i];
    const auto it = std::upper_bound(cum.begin(), cum.end(), pos);
    ++k[static_cast<std::size_t>(it - cum.begin()) - 1];
  }
  return k;
}

// ---------------------------------------------------------------------------
// Families and serialization
// ---------------------------------------------------------------------------

std::string to_string(Setting s) { return s == Setting::TLSI ? "TLSI" : "TLSII"; }

PopulationSpec InstanceFamily::population_for(const std::vector<std::uint8_t>& b) const {
  if (setting != Setting::TLSI) throw std::domain_error("family: not a TLSI family");
  return PopulationSpec{b, counts};
}

DiscreteDistribution InstanceFamily::distribution_for(
    const std::vector<std::uint8_t>& b) const {
  if (setting != Setting::TLSII) throw std::domain_error("family: not a TLSII family");
  if (static_cast<int>(b.size()) != d) throw std::domain_error("family: |b| != d");
  DiscreteDistribution dist;
  dist.atoms.reserve(masses.size());
  for (std::size_t j = 0; j < masses.size(); ++j)
    dist.atoms.push_back({static_cast<PointId>(j), b[j], masses[j]});
  dist.validate();
  return dist;
}

void InstanceFamily::validate() const {
  if (d < 1) throw std::domain_error("family: d >= 1 required");
  if (setting == Setting::TLSI) {
    if (static_cast<int>(counts.size()) != d) throw std::domain_error("family: |i| != d");
  } else {
    if (static_cast<int>(masses.size()) != d) throw std::domain_error("family: |p| != d");
  }
  if (fixed_b && static_cast<int>(fixed_b->size()) != d)
    throw std::domain_error("family: |b| != d");
}

std::string instance_to_json(const PopulationSpec& spec) {
  json j;
  j["setting"] = "TLSI";
  j["d"] = spec.d();
  j["b"] = spec.b;
  j["i"] = spec.counts;
  return j.dump();
}

std::string instance_to_json(const DiscreteDistribution& dist, int d) {
  if (static_cast<int>(dist.atoms.size()) != d)
    throw std::domain_error("instance_to_json: atom count != d");
  for (int j = 0; j + 2 < d; ++j)
    if (!(dist.atoms[j].mass == dist.atoms[j + 1].mass))
      throw std::domain_error("instance_to_json: only the p-form is serializable");
  json j;
  j["setting"] = "TLSII";
  j["d"] = d;
  std::vector<int> b;
  for (const auto& a : dist.atoms) b.push_back(a.label);
  j["b"] = b;
  // exact rational form so round trips lose nothing
  j["p"] = dist.atoms.front().mass.str();
  return j.dump();
}

InstanceFamily instance_family_from_json(const std::string& text) {
  const json j = json::parse(text);
  InstanceFamily fam;
  const std::string setting = j.at("setting").get<std::string>();
  if (setting == "TLSI") fam.setting = Setting::TLSI;
  else if (setting == "TLSII") fam.setting = Setting::TLSII;
  else throw std::domain_error("instance json: unknown setting " + setting);
  fam.d = j.at("d").get<int>();
  if (j.contains("b")) {
    std::vector<std::uint8_t> b;
    for (const auto& v : j.at("b")) b.push_back(v.get<std::uint8_t>());
    fam.fixed_b = std::move(b);
  }
  if (fam.setting == Setting::TLSI) {
    fam.counts = j.at("i").get<std::vector<std::int64_t>>();
  } else {
    const auto& pj = j.at("p");
    const Rat64 p = parse_rat64(pj.is_string() ? pj.get<std::string>() : pj.dump());
    fam.masses.assign(fam.d - 1, p);
    fam.masses.push_back(Rat64(p.den - static_cast<std::int64_t>(fam.d - 1) * p.num, p.den));
  }
  fam.validate();
  return fam;
}

}  // namespace translab
