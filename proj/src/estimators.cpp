#include "translab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "translab/prob.hpp"

namespace translab {

namespace {

// Two-sided 99% normal quantile.
constexpr double kZ99 = 2.5758293035489004;

long double u128_to_ld(unsigned __int128 v) {
  return static_cast<long double>(static_cast<std::uint64_t>(v >> 64)) * 0x1.0p64L +
         static_cast<long double>(static_cast<std::uint64_t>(v));
}

struct TrialSums {
  std::int64_t successes = 0;         // probability mode
  unsigned __int128 err_sum = 0;      // sum of error numerators w (err = w/u)
  unsigned __int128 err_sq_sum = 0;   // sum of w^2

  void merge(const TrialSums& o) {
    successes += o.successes;
    err_sum += o.err_sum;
    err_sq_sum += o.err_sq_sum;
  }
};

// One worker's reusable buffers.
struct Workspace {
  std::vector<std::int32_t> order;     // permutation buffer (TLSI)
  std::vector<PointId> point_at;       // block layout position -> point (TLSI)
  std::vector<double> masses;          // per-point masses (TLSII)
  Dataset train;
  std::vector<PointId> test_points;
};

void prepare_workspace(const InstanceFamily& family, const ExperimentConfig& cfg,
                       Workspace& ws) {
  if (family.setting == Setting::TLSI) {
    std::int64_t N = 0;
    for (auto c : family.counts) N += c;
    if (N != cfg.m + cfg.u)
      throw std::invalid_argument("mc: family population size differs from m + u");
    ws.point_at.clear();
    ws.point_at.reserve(N);
    for (std::size_t j = 0; j < family.counts.size(); ++j)
      for (std::int64_t c = 0; c < family.counts[j]; ++c)
        ws.point_at.push_back(static_cast<PointId>(j));
    ws.order.resize(N);
  } else {
    ws.masses.clear();
    double total = 0;
    for (const auto& mass : family.masses) {
      ws.masses.push_back(mass.to_double());
      total += ws.masses.back();
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("mc: family masses must sum to 1");
  }
}

// Runs one trial; returns the test-error numerator w (err = w / u).
std::int64_t run_one_trial(const LearnerSpec& learner, const InstanceFamily& family,
                           const HypothesisClass& cls, const ExperimentConfig& cfg,
                           Rng& rng, Workspace& ws) {
  const std::vector<std::uint8_t> b =
      family.fixed_b ? *family.fixed_b : random_labeling(family.d, rng);
  ws.train.clear();
  ws.test_points.clear();

  if (family.setting == Setting::TLSI) {
    const std::int64_t N = cfg.m + cfg.u;
    for (std::int64_t i = 0; i < N; ++i) ws.order[i] = static_cast<std::int32_t>(i);
    for (std::int64_t i = N - 1; i > 0; --i) {
      const auto j = static_cast<std::int64_t>(rng.below(i + 1));
      std::swap(ws.order[i], ws.order[j]);
    }
    for (std::int64_t i = 0; i < cfg.m; ++i) {
      const PointId p = ws.point_at[ws.order[i]];
      ws.train.push_back({p, b[p]});
    }
    for (std::int64_t i = cfg.m; i < N; ++i) ws.test_points.push_back(ws.point_at[ws.order[i]]);
  } else {
    for (std::int64_t t = 0; t < cfg.m + cfg.u; ++t) {
      double x = rng.next_double();
      std::size_t j = 0;
      for (; j + 1 < ws.masses.size(); ++j) {
        if (x < ws.masses[j]) break;
        x -= ws.masses[j];
      }
      const auto p = static_cast<PointId>(j);
      if (t < cfg.m) ws.train.push_back({p, b[p]});
      else ws.test_points.push_back(p);
    }
  }

  const Hypothesis h = run_learner(learner, cls, ws.train, ws.test_points, rng);
  std::int64_t wrong = 0;
  for (const PointId p : ws.test_points) {
    if (p < 0 || p >= h.d) throw std::domain_error("test point outside hypothesis domain");
    wrong += (h.label(p) != b[p]);
  }
  return wrong;
}

TrialSums run_trials(const LearnerSpec& learner, const InstanceFamily& family,
                     const HypothesisClass& cls, const ExperimentConfig& cfg,
                     std::int64_t lo, std::int64_t hi, std::int64_t success_threshold) {
  TrialSums sums;
  Workspace ws;
  prepare_workspace(family, cfg, ws);
  for (std::int64_t t = lo; t < hi; ++t) {
    Rng rng = Rng::for_trial(cfg.master_seed, static_cast<std::uint64_t>(t));
    std::int64_t w;
    try {
      w = run_one_trial(learner, family, cls, cfg, rng, ws);
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(t) + ": " + e.what());
    }
    sums.successes += (w >= success_threshold);
    const auto uw = static_cast<unsigned __int128>(w);
    sums.err_sum += uw;
    sums.err_sq_sum += uw * uw;
  }
  return sums;
}

TrialSums run_all_trials(const LearnerSpec& learner, const InstanceFamily& family,
                         const ExperimentConfig& cfg, std::int64_t success_threshold) {
  cfg.validate();
  family.validate();
  const HypothesisClass cls = full_class(cfg.d);
  const int workers = static_cast<int>(std::min<std::int64_t>(cfg.threads, cfg.trials));
  if (workers <= 1)
    return run_trials(learner, family, cls, cfg, 0, cfg.trials, success_threshold);

  std::vector<TrialSums> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = cfg.trials * w / workers;
    const std::int64_t hi = cfg.trials * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] {
      try {
        partial[w] = run_trials(learner, family, cls, cfg, lo, hi, success_threshold);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  TrialSums sums;
  for (const auto& p : partial) sums.merge(p);
  return sums;
}

}  // namespace

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t n, double z) {
  const double ph = static_cast<double>(successes) / static_cast<double>(n);
  const double z2n = z * z / static_cast<double>(n);
  const double denom = 1.0 + z2n;
  const double center = (ph + z2n / 2.0) / denom;
  const double half =
      z * std::sqrt(ph * (1.0 - ph) / static_cast<double>(n) + z2n / (4.0 * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

double beta_quantile(double q, double a, double b) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (beta_inc(a, b, mid) < q) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> clopper_pearson_interval(std::int64_t k, std::int64_t n,
                                                   double alpha) {
  const double lo = (k == 0) ? 0.0
                             : beta_quantile(alpha / 2.0, static_cast<double>(k),
                                             static_cast<double>(n - k + 1));
  const double hi = (k == n) ? 1.0
                             : beta_quantile(1.0 - alpha / 2.0, static_cast<double>(k + 1),
                                             static_cast<double>(n - k));
  return {lo, hi};
}

McEstimate mc_error_probability(const LearnerSpec& learner, const InstanceFamily& family,
                                const ExperimentConfig& cfg, CiMethod ci) {
  // Smallest error numerator w with w/u >= eps (the 1/u grid is exact).
  const auto threshold = static_cast<std::int64_t>(
      (static_cast<__int128>(cfg.epsilon.num) * cfg.u + cfg.epsilon.den - 1) /
      cfg.epsilon.den);
  const TrialSums sums = run_all_trials(learner, family, cfg, threshold);
  McEstimate est;
  est.trials = cfg.trials;
  est.master_seed = cfg.master_seed;
  est.mean = static_cast<double>(sums.successes) / static_cast<double>(cfg.trials);
  est.stderr_ = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(cfg.trials));
  switch (ci) {
    case CiMethod::wilson:
      std::tie(est.ci_low, est.ci_high) = wilson_interval(sums.successes, cfg.trials, kZ99);
      break;
    case CiMethod::clopper_pearson:
      std::tie(est.ci_low, est.ci_high) =
          clopper_pearson_interval(sums.successes, cfg.trials, 0.01);
      break;
    case CiMethod::normal:
      est.ci_low = std::max(0.0, est.mean - kZ99 * est.stderr_);
      est.ci_high = std::min(1.0, est.mean + kZ99 * est.stderr_);
      break;
  }
  return est;
}

McEstimate mc_expected_error(const LearnerSpec& learner, const InstanceFamily& family,
                             const ExperimentConfig& cfg) {
  const TrialSums sums = run_all_trials(learner, family, cfg, /*threshold=*/0);
  McEstimate est;
  est.trials = cfg.trials;
  est.master_seed = cfg.master_seed;
  const long double u = static_cast<long double>(cfg.u);
  const long double n = static_cast<long double>(cfg.trials);
  const long double mean = u128_to_ld(sums.err_sum) / (u * n);
  long double var = 0.0L;
  if (cfg.trials > 1) {
    const long double sq_mean = u128_to_ld(sums.err_sq_sum) / (u * u * n);
    var = std::max(0.0L, (sq_mean - mean * mean) * n / (n - 1.0L));
  }
  est.mean = static_cast<double>(mean);
  est.stderr_ = static_cast<double>(std::sqrt(var / n));
  est.ci_low = est.mean - kZ99 * est.stderr_;
  est.ci_high = est.mean + kZ99 * est.stderr_;
  return est;
}

BigRat exact_expected_error_erm_tlsi(const PopulationSpec& spec, std::int64_t m,
                                     const HypothesisClass& cls) {
  spec.validate();
  if (!cls.full || cls.d != spec.d())
    throw std::domain_error(
        "exact_expected_error_erm_tlsi: the closed form needs the full class "
        "(unseen-point predictions must be label-independent)");
  const std::int64_t N = spec.total();
  if (m < 1 || m >= N) throw std::domain_error("exact_expected_error_erm_tlsi: 1 <= m < N");
  const std::int64_t u = N - m;
  BigRat total = 0;
  for (int j = 0; j < spec.d(); ++j) {
    const std::int64_t ij = spec.counts[j];
    if (ij == 0 || ij > u) continue;  // the K_j = i_j event is impossible
    total += BigRat(ij) * hypergeometric_pmf_exact(N, ij, u, ij);
  }
  total /= BigRat(2 * u);
  return total;
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& m_value_points) {
  if (m_value_points.size() < 3) throw std::domain_error("rate_fit: need >= 3 points");
  const auto n = static_cast<double>(m_value_points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [m, v] : m_value_points) {
    if (!(m > 0 && v > 0)) throw std::domain_error("rate_fit: need positive m and value");
    const double x = std::log(m), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  RateFit fit;
  const double denom = n * sxx - sx * sx;
  if (denom == 0) throw std::domain_error("rate_fit: degenerate abscissae");
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (const auto& [m, v] : m_value_points) {
    const double y = std::log(v);
    const double yhat = fit.intercept + fit.slope * std::log(m);
    ss_res += (y - yhat) * (y - yhat);
    ss_tot += (y - ybar) * (y - ybar);
  }
  fit.r2 = (ss_tot == 0) ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

std::string estimate_to_jsonl(const std::string& estimator, const LearnerSpec& learner,
                              const std::string& instance_json, const McEstimate& est) {
  nlohmann::json j;
  j["estimator"] = estimator;
  j["learner"] = nlohmann::json::parse(learner_to_json(learner));
  j["instance"] = nlohmann::json::parse(instance_json);
  j["mean"] = est.mean;
  j["ci"] = {est.ci_low, est.ci_high};
  j["trials"] = est.trials;
  j["seed"] = est.master_seed;
  return j.dump();
}

}  // namespace translab
