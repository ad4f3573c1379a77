#include "translab/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "translab/bounds.hpp"
#include "translab/estimators.hpp"
#include "translab/verify.hpp"

namespace translab {

const char* const kScenarioNames[11] = {
    "tlsi-lower-prob", "tlsi-lower-expect", "tlsii-lower-prob", "tlsii-lower-expect",
    "erm-upper-tlsi",  "erm-upper-tlsii",   "hanneke-upper",    "ssl-chain",
    "lemma-verify",    "rate-sweep",        "cm06-flaw"};

bool is_known_scenario(const std::string& name) {
  for (const char* n : kScenarioNames)
    if (name == n) return true;
  return false;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Row {
  std::string scenario;
  std::string d, m, u, epsilon, delta, trials, seed;
  std::string estimate, ci_low, ci_high;
  std::string bound_name;
  std::string bound_value;
  std::string applicable;
  bool pass = true;
};

class RowWriter {
 public:
  RowWriter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {
    if (format_ == OutputFormat::csv) {
      out_ << "# schema=1\n";
      out_ << "scenario,d,m,u,epsilon,delta,trials,seed,estimate,ci_low,ci_high,"
              "bound_name,bound_value,applicable,verdict\n";
    }
  }

  void write(const Row& r) {
    all_pass_ &= r.pass;
    if (format_ == OutputFormat::csv) {
      out_ << r.scenario << ',' << r.d << ',' << r.m << ',' << r.u << ',' << r.epsilon
           << ',' << r.delta << ',' << r.trials << ',' << r.seed << ',' << r.estimate
           << ',' << r.ci_low << ',' << r.ci_high << ',' << r.bound_name << ','
           << r.bound_value << ',' << r.applicable << ',' << (r.pass ? "pass" : "fail")
           << '\n';
    } else {
      out_ << "{\"scenario\":\"" << r.scenario << "\"";
      auto field = [this](const char* k, const std::string& v) {
        if (!v.empty()) out_ << ",\"" << k << "\":" << v;
      };
      field("d", r.d);
      field("m", r.m);
      field("u", r.u);
      field("epsilon", r.epsilon);
      field("delta", r.delta);
      field("trials", r.trials);
      field("seed", r.seed);
      field("estimate", r.estimate);
      field("ci_low", r.ci_low);
      field("ci_high", r.ci_high);
      if (!r.bound_name.empty()) out_ << ",\"bound_name\":\"" << r.bound_name << "\"";
      field("bound_value", r.bound_value);
      if (!r.applicable.empty()) out_ << ",\"applicable\":" << r.applicable;
      out_ << ",\"verdict\":\"" << (r.pass ? "pass" : "fail") << "\"}\n";
    }
  }

  bool all_pass() const { return all_pass_; }

 private:
  std::ostream& out_;
  OutputFormat format_;
  bool all_pass_ = true;
};

struct Params {
  const std::map<std::string, std::string>& map;

  std::int64_t i64(const std::string& key, std::int64_t dflt) const {
    const auto it = map.find(key);
    return it == map.end() ? dflt : std::stoll(it->second);
  }
  double real(const std::string& key, double dflt) const {
    const auto it = map.find(key);
    return it == map.end() ? dflt : std::stod(it->second);
  }
  Rat64 rat(const std::string& key, Rat64 dflt) const {
    const auto it = map.find(key);
    return it == map.end() ? dflt : parse_rat64(it->second);
  }
};

Row base_row(const std::string& scenario, const ExperimentConfig& cfg) {
  Row r;
  r.scenario = scenario;
  r.d = std::to_string(cfg.d);
  r.m = std::to_string(cfg.m);
  r.u = std::to_string(cfg.u);
  r.epsilon = fmt(cfg.epsilon.to_double());
  r.delta = fmt(cfg.delta);
  r.trials = std::to_string(cfg.trials);
  r.seed = std::to_string(cfg.master_seed);
  return r;
}

void fill_estimate(Row& r, const McEstimate& est) {
  r.estimate = fmt(est.mean);
  r.ci_low = fmt(est.ci_low);
  r.ci_high = fmt(est.ci_high);
}

void fill_bound(Row& r, const BoundEvaluation& b) {
  r.bound_name = b.name;
  r.bound_value = fmt(b.value);
  r.applicable = b.applicable ? "true" : "false";
}

// Lower-bound verdict: the empirical estimate must not sit below the proven
// lower bound by more than 3 sigma.
bool lower_verdict(const McEstimate& est, const BoundEvaluation& b) {
  if (!b.applicable) return true;
  return est.mean >= b.value - 3.0 * est.stderr_;
}

ExperimentConfig resolve(const ScenarioSpec& spec, const ExperimentConfig& base,
                         ExperimentConfig dflt) {
  const Params p{spec.params};
  dflt.master_seed = base.master_seed;
  dflt.threads = base.threads;
  dflt.d = static_cast<int>(p.i64("d", dflt.d));
  dflt.m = p.i64("m", dflt.m);
  dflt.u = p.i64("u", dflt.u);
  dflt.epsilon = p.rat("epsilon", dflt.epsilon);
  dflt.delta = p.real("delta", dflt.delta);
  dflt.trials = p.i64("trials", dflt.trials);
  dflt.master_seed = static_cast<std::uint64_t>(p.i64("seed", dflt.master_seed));
  dflt.threads = static_cast<int>(p.i64("threads", dflt.threads));
  dflt.validate();
  return dflt;
}

// --- individual scenarios ---------------------------------------------------

void scenario_tlsi_lower_prob(const ScenarioSpec& spec, const ExperimentConfig& base,
                              RowWriter& w) {
  ExperimentConfig dflt;
  dflt.d = 8;
  dflt.m = 64;
  dflt.u = 64;
  dflt.epsilon = Rat64(1, 1024);
  dflt.trials = 100000;
  const ExperimentConfig cfg = resolve(spec, base, dflt);
  InstanceFamily fam;
  fam.setting = Setting::TLSI;
  fam.d = cfg.d;
  fam.counts = tlsi_hard_counts_prob(cfg.population_size(), cfg.d, cfg.epsilon);
  const McEstimate est = mc_error_probability(LearnerSpec::erm(), fam, cfg);
  const BoundEvaluation b = lower_prob_tlsi(cfg.d, cfg.m, cfg.u, cfg.epsilon.to_double());
  Row r = base_row(spec.name, cfg);
  fill_estimate(r, est);
  fill_bound(r, b);
  r.pass = lower_verdict(est, b);
  w.write(r);
}

void scenario_tlsi_lower_expect(const ScenarioSpec& spec, const ExperimentConfig& base,
                                RowWriter& w) {
  ExperimentConfig dflt;
  dflt.d = 5;
  dflt.m = 16;
  dflt.u = 48;
  dflt.trials = 100000;
  const ExperimentConfig cfg = resolve(spec, base, dflt);
  InstanceFamily fam;
  fam.setting = Setting::TLSI;
  fam.d = cfg.d;
  fam.counts = tlsi_hard_counts_expect(cfg.population_size(), cfg.d, cfg.m);
  const McEstimate est = mc_expected_error(LearnerSpec::erm(), fam, cfg);

  // Row 1: against the closed-form expectation of the ERM error (exact).
  const PopulationSpec ps{std::vector<std::uint8_t>(cfg.d, 0), fam.counts};
  const BigRat exact = exact_expected_error_erm_tlsi(ps, cfg.m, full_class(cfg.d));
  const double exact_d = exact.convert_to<double>();
  Row r1 = base_row(spec.name, cfg);
  fill_estimate(r1, est);
  r1.bound_name = "exact_erm_expectation";
  r1.bound_value = fmt(exact_d);
  r1.applicable = "true";
  r1.pass = std::abs(est.mean - exact_d) <= 3.0 * est.stderr_;
  w.write(r1);

  // Row 2: against the minimax lower bound.
  const BoundEvaluation b = lower_expect_tlsi(cfg.d, cfg.m, cfg.u);
  Row r2 = base_row(spec.name, cfg);
  fill_estimate(r2, est);
  fill_bound(r2, b);
  r2.pass = lower_verdict(est, b);
  w.write(r2);
}

void scenario_tlsii_lower_prob(const ScenarioSpec& spec, const ExperimentConfig& base,
                               RowWriter& w) {
  ExperimentConfig dflt;
  dflt.d = 5;
  dflt.m = 64;
  dflt.u = 64;
  dflt.epsilon = Rat64(1, 2048);
  dflt.trials = 100000;
  const ExperimentConfig cfg = resolve(spec, base, dflt);
  // p = 16 eps / (d-1), exactly.
  const Rat64 p(16 * cfg.epsilon.num, cfg.epsilon.den * (cfg.d - 1));
  InstanceFamily fam;
  fam.setting = Setting::TLSII;
  fam.d = cfg.d;
  fam.masses.assign(cfg.d - 1, p);
  fam.masses.push_back(Rat64(p.den - static_cast<std::int64_t>(cfg.d - 1) * p.num, p.den));
  const McEstimate est = mc_error_probability(LearnerSpec::erm(), fam, cfg);
  const BoundEvaluation b = lower_prob_tlsii(cfg.d, cfg.m, cfg.u, cfg.epsilon.to_double());
  Row r = base_row(spec.name, cfg);
  fill_estimate(r, est);
  fill_bound(r, b);
  r.pass = lower_verdict(est, b);
  w.write(r);
}

void scenario_tlsii_lower_expect(const ScenarioSpec& spec, const ExperimentConfig& base,
                                 RowWriter& w) {
  ExperimentConfig dflt;
  dflt.d = 5;
  dflt.m = 16;
  dflt.u = 64;
  dflt.trials = 100000;
  const ExperimentConfig cfg = resolve(spec, base, dflt);
  InstanceFamily fam;
  fam.setting = Setting::TLSII;
  fam.d = cfg.d;
  fam.masses.assign(cfg.d - 1, Rat64(1, cfg.m));
  fam.masses.push_back(Rat64(cfg.m - (cfg.d - 1), cfg.m));
  const McEstimate est = mc_expected_error(LearnerSpec::erm(), fam, cfg);
  const BoundEvaluation b = lower_expect_tlsii(cfg.d, cfg.m);
  Row r = base_row(spec.name, cfg);
  fill_estimate(r, est);
  fill_bound(r, b);
  r.pass = lower_verdict(est, b);
  w.write(r);
}

// Frequency of {err > bound} must stay below delta.
void scenario_erm_upper(const ScenarioSpec& spec, const ExperimentConfig& base,
                        RowWriter& w, Setting setting) {
  ExperimentConfig dflt;
  dflt.d = 4;
  dflt.m = 256;
  dflt.u = 256;
  dflt.delta = 0.05;
  dflt.trials = 10000;
  ExperimentConfig cfg = resolve(spec, base, dflt);
  InstanceFamily fam;
  fam.setting = setting;
  fam.d = cfg.d;
  BoundEvaluation b;
  if (setting == Setting::TLSI) {
    fam.counts = tlsi_hard_counts_expect(cfg.population_size(), cfg.d, cfg.m);
    b = erm_upper_tlsi(cfg.d, cfg.m, cfg.u, cfg.delta).prob_bound;
  } else {
    fam.masses.assign(cfg.d - 1, Rat64(1, cfg.m));
    fam.masses.push_back(Rat64(cfg.m - (cfg.d - 1), cfg.m));
    b = erm_upper_tlsii(cfg.d, cfg.m, cfg.u, cfg.delta).prob_direct;
  }
  // {err > bound} on the 1/u grid: smallest numerator strictly above bound*u.
  const auto grid_num =
      static_cast<std::int64_t>(std::floor(b.value * static_cast<double>(cfg.u))) + 1;
  if (grid_num > cfg.u) {
    // The bound exceeds 1; nothing can violate it.
    Row r = base_row(spec.name, cfg);
    r.estimate = fmt(0.0);
    fill_bound(r, b);
    r.pass = true;
    w.write(r);
    return;
  }
  ExperimentConfig probe = cfg;
  probe.epsilon = Rat64(grid_num, cfg.u);
  const McEstimate est = mc_error_probability(LearnerSpec::erm(), fam, probe);
  Row r = base_row(spec.name, cfg);
  fill_estimate(r, est);
  fill_bound(r, b);
  r.pass = !b.applicable || est.mean <= cfg.delta;
  w.write(r);
}

void scenario_hanneke_upper(const ScenarioSpec& spec, const ExperimentConfig& base,
                            RowWriter& w) {
  ExperimentConfig dflt;
  dflt.d = 4;
  dflt.m = 64;
  dflt.u = 64;
  dflt.delta = 0.05;
  dflt.trials = 10000;
  const ExperimentConfig cfg = resolve(spec, base, dflt);
  const double C = Params{spec.params}.real("C", 1.0);
  InstanceFamily fam;
  fam.setting = Setting::TLSII;
  fam.d = cfg.d;
  fam.masses.assign(cfg.d - 1, Rat64(1, cfg.m));
  fam.masses.push_back(Rat64(cfg.m - (cfg.d - 1), cfg.m));
  const McEstimate est = mc_expected_error(LearnerSpec::majority(), fam, cfg);
  const auto b = hanneke_upper_tlsii(cfg.d, cfg.m, cfg.u, cfg.delta, C);
  Row r = base_row(spec.name, cfg);
  fill_estimate(r, est);
  fill_bound(r, b.expect);
  r.pass = est.mean - 3.0 * est.stderr_ <= b.expect.value;
  w.write(r);
}

void scenario_ssl_chain(const ScenarioSpec& spec, const ExperimentConfig& base,
                        RowWriter& w) {
  ExperimentConfig dflt;
  dflt.d = 2;
  dflt.m = 2;
  dflt.u = 2;
  dflt.trials = 1;
  const ExperimentConfig cfg = resolve(spec, base, dflt);
  const HypothesisClass cls = full_class(cfg.d);
  std::vector<DiscreteDistribution> family;
  for (std::uint32_t code = 0; code < (1u << cfg.d); ++code) {
    std::vector<std::uint8_t> b(cfg.d);
    for (int j = 0; j < cfg.d; ++j) b[j] = (code >> (cfg.d - 1 - j)) & 1u;
    family.push_back(tlsii_hard_distribution_p(cfg.d, Rat64(1, cfg.d), b));
  }
  const SslSlResult res = ssl_vs_sl_experiment(cls, family, cfg.m, cfg.u);
  const bool chain = res.mII <= res.mSSL && res.mSSL <= res.mSL;
  auto emit = [&](const char* name, const BigRat& v) {
    Row r = base_row(spec.name, cfg);
    r.estimate = fmt(v.convert_to<double>());
    r.bound_name = name;
    r.applicable = "true";
    r.pass = chain;
    w.write(r);
  };
  emit("minimax_transductive", res.mII);
  emit("minimax_ssl", res.mSSL);
  emit("minimax_sl", res.mSL);
}

void scenario_lemma_verify(const ScenarioSpec& spec, const ExperimentConfig& base,
                           RowWriter& w) {
  const auto n_max = static_cast<int>(Params{spec.params}.i64("n_max", 150));
  ExperimentConfig cfg = base;
  const Row proto = [&] {
    Row r;
    r.scenario = spec.name;
    r.seed = std::to_string(cfg.master_seed);
    return r;
  }();
  verify_lemma_binomial_ratio(n_max, [&](const LemmaRow& lr) {
    Row r = proto;
    r.bound_name = "lemma(n=" + std::to_string(lr.n) + ",k=" + std::to_string(lr.k) +
                   ",i=" + std::to_string(lr.i) + ")";
    r.estimate = fmt(lr.ratio);
    r.ci_low = fmt(lr.lower);
    r.ci_high = fmt(lr.upper);
    r.bound_value = fmt(lr.exp_lower);
    r.applicable = "true";
    r.pass = lr.holds;
    w.write(r);
  });
  for (const ConstantCheck& c : verify_proof_constants()) {
    Row r = proto;
    r.bound_name = c.name;
    r.estimate = fmt(c.lhs);
    r.bound_value = fmt(c.rhs);
    r.applicable = "true";
    r.pass = c.pass;
    w.write(r);
  }
}

void scenario_rate_sweep(const ScenarioSpec& spec, const ExperimentConfig& base,
                         RowWriter& w) {
  ExperimentConfig dflt;
  dflt.d = 4;
  dflt.trials = 20000;
  ExperimentConfig cfg = resolve(spec, base, dflt);
  const std::vector<std::int64_t> ms = {16, 32, 64, 128};
  std::vector<std::pair<double, double>> points;
  for (const std::int64_t m : ms) {
    ExperimentConfig c = cfg;
    c.m = m;
    c.u = m;
    InstanceFamily fam;
    fam.setting = Setting::TLSII;
    fam.d = c.d;
    fam.masses.assign(c.d - 1, Rat64(1, m));
    fam.masses.push_back(Rat64(m - (c.d - 1), m));
    const McEstimate est = mc_expected_error(LearnerSpec::erm(), fam, c);
    points.emplace_back(static_cast<double>(m), est.mean);
    Row r = base_row(spec.name, c);
    fill_estimate(r, est);
    r.bound_name = "sweep_point";
    r.pass = true;
    w.write(r);
  }
  const RateFit fit = rate_fit(points);
  Row r = base_row(spec.name, cfg);
  r.m.clear();
  r.u.clear();
  r.estimate = fmt(fit.slope);
  r.ci_low = fmt(fit.r2);
  r.bound_name = "rate_fit_slope";
  r.bound_value = fmt(-1.0);
  r.applicable = "true";
  r.pass = fit.slope >= -1.3 && fit.slope <= -0.8 && fit.r2 >= 0.98;
  w.write(r);
}

void scenario_cm06_flaw(const ScenarioSpec& spec, const ExperimentConfig& base,
                        RowWriter& w) {
  ExperimentConfig dflt;
  dflt.m = 100;
  dflt.u = 100;
  dflt.epsilon = Rat64(1, 100);
  dflt.trials = 1;
  const ExperimentConfig cfg = resolve(spec, base, dflt);
  const double threshold = cm06_flaw_check(cfg.m, cfg.u, 0.5).threshold;
  const std::vector<double> grid = {cfg.epsilon.to_double(), 0.05,      0.1,
                                    threshold - 1e-9,        threshold, threshold + 1e-9,
                                    0.2,                     0.5};
  for (const double eps : grid) {
    const Cm06FlawCheck chk = cm06_flaw_check(cfg.m, cfg.u, eps);
    Row r = base_row(spec.name, cfg);
    r.epsilon = fmt(eps);
    r.estimate = fmt(chk.lhs);
    r.ci_low = fmt(chk.rhs);
    r.bound_name = chk.holds ? "holds" : "fails_below_threshold";
    r.bound_value = fmt(chk.threshold);
    r.applicable = "true";
    r.pass = std::abs(eps - chk.threshold) <= 1e-12 || chk.holds == (eps >= chk.threshold);
    w.write(r);
  }
}

}  // namespace

int run_scenario(const ScenarioSpec& spec, const ExperimentConfig& cfg, std::ostream& out,
                 OutputFormat format) {
  if (!is_known_scenario(spec.name))
    throw std::invalid_argument("unknown scenario: " + spec.name);
  RowWriter writer(out, format);
  if (spec.name == "tlsi-lower-prob") scenario_tlsi_lower_prob(spec, cfg, writer);
  else if (spec.name == "tlsi-lower-expect") scenario_tlsi_lower_expect(spec, cfg, writer);
  else if (spec.name == "tlsii-lower-prob") scenario_tlsii_lower_prob(spec, cfg, writer);
  else if (spec.name == "tlsii-lower-expect") scenario_tlsii_lower_expect(spec, cfg, writer);
  else if (spec.name == "erm-upper-tlsi") scenario_erm_upper(spec, cfg, writer, Setting::TLSI);
  else if (spec.name == "erm-upper-tlsii") scenario_erm_upper(spec, cfg, writer, Setting::TLSII);
  else if (spec.name == "hanneke-upper") scenario_hanneke_upper(spec, cfg, writer);
  else if (spec.name == "ssl-chain") scenario_ssl_chain(spec, cfg, writer);
  else if (spec.name == "lemma-verify") scenario_lemma_verify(spec, cfg, writer);
  else if (spec.name == "rate-sweep") scenario_rate_sweep(spec, cfg, writer);
  else if (spec.name == "cm06-flaw") scenario_cm06_flaw(spec, cfg, writer);
  out.flush();
  return writer.all_pass() ? kExitOk : kExitVerdictFail;
}

}  // namespace translab
