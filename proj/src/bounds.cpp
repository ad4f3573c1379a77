#include "translab/bounds.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace translab {

using nlohmann::json;

std::string to_string(BoundSetting s) {
  switch (s) {
    case BoundSetting::TLSI: return "TLSI";
    case BoundSetting::TLSII: return "TLSII";
    case BoundSetting::SL: return "SL";
    case BoundSetting::SSL: return "SSL";
  }
  return "?";
}

std::string to_string(BoundKind k) { return k == BoundKind::lower ? "lower" : "upper"; }

std::string to_string(BoundMode m) {
  switch (m) {
    case BoundMode::probability: return "probability";
    case BoundMode::expectation: return "expectation";
    case BoundMode::sample_complexity: return "sample_complexity";
  }
  return "?";
}

namespace {

struct ConditionSet {
  std::vector<std::string> failed;

  bool require(bool ok, const std::string& label) {
    if (!ok) failed.push_back(label);
    return ok;
  }
  bool all_ok() const { return failed.empty(); }
};

BoundEvaluation make_eval(std::string name, BoundSetting s, BoundKind k, BoundMode m,
                          double value, const ConditionSet& conds) {
  BoundEvaluation e;
  e.name = std::move(name);
  e.setting = s;
  e.kind = k;
  e.mode = m;
  e.value = value;
  e.applicable = conds.all_ok();
  e.failed_conditions = conds.failed;
  return e;
}

}  // namespace

BoundEvaluation lower_prob_tlsi(int d, std::int64_t m, std::int64_t u, double eps) {
  // Statement 1: (1/150) e^{-32 m eps}, constant 1/4 for d < 7.
  ConditionSet st1;
  st1.require(d >= 2, "st1: d >= 2");
  st1.require(u >= m, "st1: u >= m");
  st1.require(m >= 8 * (static_cast<std::int64_t>(d) - 1), "st1: m >= 8(d-1)");
  st1.require(eps > 0 && eps <= 1.0 / 32.0, "st1: 0 < eps <= 1/32");
  const double c1 = (d < 7) ? 0.25 : 1.0 / 150.0;
  const double v1 = c1 * std::exp(-32.0 * static_cast<double>(m) * eps);

  // Statement 2: 1/16 on the moderate-accuracy window.
  ConditionSet st2;
  st2.require(d >= 2, "st2: d >= 2");
  st2.require(m >= std::max<std::int64_t>(9, 2 * (static_cast<std::int64_t>(d) - 1)),
              "st2: m >= max{9, 2(d-1)}");
  st2.require(eps > 0 && static_cast<double>(m) <= static_cast<double>(d) / (24.0 * eps),
              "st2: m <= d/(24 eps)");
  st2.require(m <= u, "st2: m <= u");
  const double v2 = 1.0 / 16.0;

  ConditionSet merged;
  double value;
  if (st1.all_ok() || st2.all_ok()) {
    value = std::max(st1.all_ok() ? v1 : 0.0, st2.all_ok() ? v2 : 0.0);
  } else {
    value = std::max(v1, v2);  // diagnostic only
    merged.failed = st1.failed;
    merged.failed.insert(merged.failed.end(), st2.failed.begin(), st2.failed.end());
  }
  return make_eval("tlsi_lower_prob", BoundSetting::TLSI, BoundKind::lower,
                   BoundMode::probability, value, merged);
}

BoundEvaluation sample_complexity_lower_tlsi(int d, double eps, double delta) {
  ConditionSet c;
  c.require(d >= 2, "d >= 2");
  c.require(eps > 0 && eps <= 1.0 / 32.0, "0 < eps <= 1/32");
  c.require(delta > 0 && delta <= 1.0 / 150.0, "0 < delta <= 1/150");
  const double v = std::max(std::log(1.0 / (150.0 * delta)) / (32.0 * eps),
                            static_cast<double>(d) / (24.0 * eps));
  return make_eval("tlsi_sample_complexity_lower", BoundSetting::TLSI, BoundKind::lower,
                   BoundMode::sample_complexity, v, c);
}

double sample_complexity_lower_tlsi_theta(int d, double eps, double delta) {
  return std::log(1.0 / (150.0 * delta)) / (64.0 * eps) +
         static_cast<double>(d) / (48.0 * eps);
}

BoundEvaluation lower_expect_tlsi(int d, std::int64_t m, std::int64_t u) {
  ConditionSet c;
  c.require(d >= 2, "d >= 2");
  c.require(m >= std::max<std::int64_t>(9, static_cast<std::int64_t>(d) - 1),
            "m >= max{9, d-1}");
  c.require(m <= u, "m <= u");
  const double v = static_cast<double>(d - 1) / (16.0 * static_cast<double>(m));
  return make_eval("tlsi_lower_expect", BoundSetting::TLSI, BoundKind::lower,
                   BoundMode::expectation, v, c);
}

BoundEvaluation lower_prob_tlsii(int d, std::int64_t m, std::int64_t u, double eps) {
  ConditionSet st1;
  st1.require(d >= 2, "st1: d >= 2");
  st1.require(2 * m >= static_cast<std::int64_t>(d) - 1 && m >= 10,
              "st1: m >= max{(d-1)/2, 10}");
  st1.require(eps > 0 && static_cast<double>(m) <= static_cast<double>(d - 1) / (21.0 * eps),
              "st1: m <= (d-1)/(21 eps)");
  st1.require(m <= u, "st1: m <= u");
  const double v1 = 1.0 / 80.0;

  ConditionSet st2;
  st2.require(d >= 2, "st2: d >= 2");
  st2.require(eps > 0 && eps <= 1.0 / 32.0, "st2: 0 < eps <= 1/32");
  st2.require(m >= static_cast<std::int64_t>(d) - 1, "st2: m >= d-1");
  const double v2 = std::exp(-32.0 * static_cast<double>(m) * eps) / 18.0;

  ConditionSet merged;
  double value;
  if (st1.all_ok() || st2.all_ok()) {
    value = std::max(st1.all_ok() ? v1 : 0.0, st2.all_ok() ? v2 : 0.0);
  } else {
    value = std::max(v1, v2);
    merged.failed = st1.failed;
    merged.failed.insert(merged.failed.end(), st2.failed.begin(), st2.failed.end());
  }
  return make_eval("tlsii_lower_prob", BoundSetting::TLSII, BoundKind::lower,
                   BoundMode::probability, value, merged);
}

BoundEvaluation sample_complexity_lower_tlsii(int d, double eps, double delta) {
  ConditionSet c;
  c.require(d >= 2, "d >= 2");
  c.require(eps > 0 && eps <= 1.0 / 32.0, "0 < eps <= 1/32");
  c.require(delta > 0 && delta <= 1.0 / 80.0, "0 < delta <= 1/80");
  const double v = std::max(std::log(1.0 / (80.0 * delta)) / (32.0 * eps),
                            static_cast<double>(d - 1) / (21.0 * eps));
  return make_eval("tlsii_sample_complexity_lower", BoundSetting::TLSII, BoundKind::lower,
                   BoundMode::sample_complexity, v, c);
}

BoundEvaluation lower_expect_tlsii(int d, std::int64_t m) {
  ConditionSet c;
  c.require(d >= 2, "d >= 2");
  c.require(m >= static_cast<std::int64_t>(d) - 1, "m >= d-1");
  const double md = static_cast<double>(m);
  const double v = (static_cast<double>(d - 1) / (2.0 * M_E * md)) * (1.0 - 1.0 / md);
  return make_eval("tlsii_lower_expect", BoundSetting::TLSII, BoundKind::lower,
                   BoundMode::expectation, v, c);
}

ErmUpperTlsi erm_upper_tlsi(int d, std::int64_t m, std::int64_t u, double delta) {
  const double N = static_cast<double>(m + u);
  const double log_term = static_cast<double>(d) * std::log(N * M_E / static_cast<double>(d));
  ConditionSet base;
  base.require(d >= 2, "d >= 2");
  base.require(u >= 4, "u >= 4");
  base.require(u >= m, "u >= m");
  base.require(m >= static_cast<std::int64_t>(d) - 1, "m >= d-1");

  ConditionSet prob_conds = base;
  prob_conds.require(delta > 0 && delta < 1, "delta in (0,1)");
  const double prob = 2.0 * (log_term + std::log(1.0 / delta)) / static_cast<double>(m);
  const double expect = (2.0 * log_term + 2.0) / static_cast<double>(m);

  ErmUpperTlsi out;
  out.prob_bound = make_eval("tlsi_erm_upper_prob", BoundSetting::TLSI, BoundKind::upper,
                             BoundMode::probability, prob, prob_conds);
  out.expect_bound = make_eval("tlsi_erm_upper_expect", BoundSetting::TLSI, BoundKind::upper,
                               BoundMode::expectation, expect, base);
  return out;
}

BoundEvaluation erm_upper_tlsi_corrected(int d, std::int64_t m, std::int64_t u,
                                         double delta) {
  ConditionSet c;
  c.require(u >= 4, "u >= 4");
  c.require(m <= u, "m <= u");
  c.require(delta > 0 && delta < 1, "delta in (0,1)");
  const double N = static_cast<double>(m + u);
  const double formula =
      2.0 * (static_cast<double>(d) * std::log(N * M_E / static_cast<double>(d)) +
             std::log(1.0 / delta)) /
      static_cast<double>(m);
  const double v = std::max(formula, std::sqrt(2.0) / static_cast<double>(u));
  return make_eval("tlsi_erm_upper_prob_corrected", BoundSetting::TLSI, BoundKind::upper,
                   BoundMode::probability, v, c);
}

ErmUpperTlsii erm_upper_tlsii(int d, std::int64_t m, std::int64_t u, double delta) {
  const double md = static_cast<double>(m);
  const double ud = static_cast<double>(u);

  ConditionSet direct;
  direct.require(d >= 1, "d >= 1");
  direct.require(m >= 1, "m >= 1");
  direct.require(u >= 1, "u >= 1");
  direct.require(delta > 0 && delta < 1, "delta in (0,1)");
  const double prob_direct =
      (6.0 * d * std::log(md) + 3.0 * std::log(2.0 / delta) + 3.0 * std::log(2.0)) /
          (2.0 * md) +
      5.0 * std::log(2.0 / delta) / (3.0 * ud);

  ConditionSet expect_conds;
  expect_conds.require(d >= 1, "d >= 1");
  expect_conds.require(m >= 1, "m >= 1");
  const double expect = (2.0 * d * std::log(2.0 * md) + 4.0) / (md * std::log(2.0));

  // Through the TLSI reduction, with that theorem's preconditions.
  ConditionSet red;
  red.require(d >= 2, "reduction: d >= 2");
  red.require(u >= 4, "reduction: u >= 4");
  red.require(u >= m, "reduction: u >= m");
  red.require(m >= static_cast<std::int64_t>(d) - 1, "reduction: m >= d-1");
  red.require(delta > 0 && delta < 1, "reduction: delta in (0,1)");
  const double N = md + ud;
  const double prob_red =
      2.0 * (d * std::log(N * M_E / d) + std::log(1.0 / delta)) / md;

  ErmUpperTlsii out;
  out.prob_direct = make_eval("tlsii_erm_upper_prob_direct", BoundSetting::TLSII,
                              BoundKind::upper, BoundMode::probability, prob_direct, direct);
  out.prob_via_reduction =
      make_eval("tlsii_erm_upper_prob_via_tlsi", BoundSetting::TLSII, BoundKind::upper,
                BoundMode::probability, prob_red, red);
  out.expect = make_eval("tlsii_erm_upper_expect", BoundSetting::TLSII, BoundKind::upper,
                         BoundMode::expectation, expect, expect_conds);
  out.direct_over_reduction = prob_direct / prob_red;
  return out;
}

ParamUpperTlsii hanneke_upper_tlsii(int d, std::int64_t m, std::int64_t u, double delta,
                                    double C) {
  if (!(C > 0)) throw std::domain_error("hanneke_upper: C > 0 required");
  if (!(delta > 0 && delta < 1)) throw std::domain_error("hanneke_upper: delta in (0,1)");
  if (m < 1 || u < 1) throw std::domain_error("hanneke_upper: m, u >= 1 required");
  const double md = static_cast<double>(m);
  ConditionSet ok;  // predicate-free once the domain checks pass
  ParamUpperTlsii out;
  out.prob = make_eval("tlsii_majority_upper_prob", BoundSetting::TLSII, BoundKind::upper,
                       BoundMode::probability,
                       C * (d + std::log(2.0 / delta)) / md +
                           5.0 * std::log(2.0 / delta) / (3.0 * static_cast<double>(u)),
                       ok);
  out.expect = make_eval("tlsii_majority_upper_expect", BoundSetting::TLSII,
                         BoundKind::upper, BoundMode::expectation, C * d / md, ok);
  out.prob.caller_constant = true;
  out.expect.caller_constant = true;
  return out;
}

SslLowerBounds ssl_relations(double mII_expect, double mII_prob_at_2eps, std::int64_t u,
                             double eps) {
  SslLowerBounds out;
  out.expect_lower = mII_expect;
  out.prob_lower =
      std::max(0.0, mII_prob_at_2eps -
                        std::exp(-2.0 * static_cast<double>(u) * eps * eps));
  return out;
}

Cm06FlawCheck cm06_flaw_check(std::int64_t m, std::int64_t u, double eps) {
  if (!(eps > 0)) throw std::domain_error("cm06_flaw_check: eps > 0 required");
  if (m < 1 || u < 1) throw std::domain_error("cm06_flaw_check: m, u >= 1 required");
  const double md = static_cast<double>(m);
  const double ud = static_cast<double>(u);
  const double common = -0.5 * (md * ud / (md + ud)) * eps * eps;
  Cm06FlawCheck out;
  out.lhs = common * ((md + ud + 2.0) / (md + ud - ud * eps + 1.0)) *
            (ud * eps / (ud * eps + 1.0));
  out.rhs = common;
  out.holds = out.lhs <= out.rhs;
  out.threshold = (std::sqrt(md + ud + 2.0) - 1.0) / ud;
  return out;
}

std::string bounds_batch_csv(const std::string& json_points) {
  const json points = json::parse(json_points);
  if (!points.is_array()) throw std::invalid_argument("bounds batch: expected a JSON array");
  std::ostringstream csv;
  csv << "# schema=1\n";
  csv << "name,setting,kind,mode,value,applicable,failed_conditions\n";
  auto emit = [&csv](const BoundEvaluation& e) {
    csv << e.name << ',' << to_string(e.setting) << ',' << to_string(e.kind) << ','
        << to_string(e.mode) << ',';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    csv << buf << ',' << (e.applicable ? "true" : "false") << ',';
    csv << '"';
    for (std::size_t i = 0; i < e.failed_conditions.size(); ++i) {
      if (i) csv << "; ";
      csv << e.failed_conditions[i];
    }
    csv << '"' << '\n';
  };
  for (const auto& p : points) {
    const int d = p.at("d").get<int>();
    const auto m = p.at("m").get<std::int64_t>();
    const auto u = p.at("u").get<std::int64_t>();
    const double eps = p.value("epsilon", 1.0 / 32.0);
    const double delta = p.value("delta", 0.05);
    emit(lower_prob_tlsi(d, m, u, eps));
    emit(lower_expect_tlsi(d, m, u));
    emit(sample_complexity_lower_tlsi(d, eps, delta));
    emit(lower_prob_tlsii(d, m, u, eps));
    emit(lower_expect_tlsii(d, m));
    emit(sample_complexity_lower_tlsii(d, eps, delta));
    const auto tlsi_up = erm_upper_tlsi(d, m, u, delta);
    emit(tlsi_up.prob_bound);
    emit(tlsi_up.expect_bound);
    emit(erm_upper_tlsi_corrected(d, m, u, delta));
    const auto tlsii_up = erm_upper_tlsii(d, m, u, delta);
    emit(tlsii_up.prob_direct);
    emit(tlsii_up.prob_via_reduction);
    emit(tlsii_up.expect);
  }
  return csv.str();
}

}  // namespace translab
