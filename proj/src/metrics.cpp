#include "iqpbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iqpbench {

namespace {

// p log(p/q) accumulated over a state set, with the clamp flag; p entries
// of exactly 0 contribute 0.
double kl_sum(const ProbabilityTable& p, const ProbabilityTable& q,
              const std::vector<u32>& states, double p_norm, double q_norm,
              bool& clamped) {
  double acc = 0.0;
  for (u32 x : states) {
    const double px = p.mass[x] / p_norm;
    if (px <= 0.0) continue;
    double qx = q.mass[x] / q_norm;
    if (qx < kl_floor) {
      qx = kl_floor;
      clamped = true;
    }
    acc += px * std::log(px / qx);
  }
  return acc;
}

}  // namespace

KlValue forward_kl(const ProbabilityTable& target,
                   const ProbabilityTable& model,
                   const std::vector<u32>& support) {
  KlValue out;
  out.value = kl_sum(target, model, support, 1.0, 1.0, out.clamped);
  return out;
}

KlBreakdown kl_decomposition(const ProbabilityTable& target,
                             const ProbabilityTable& model,
                             const std::vector<u32>& observed,
                             const std::vector<u32>& support) {
  KlBreakdown out;

  std::vector<u32> unobserved;
  unobserved.reserve(support.size());
  std::set_difference(support.begin(), support.end(), observed.begin(),
                      observed.end(), std::back_inserter(unobserved));
  if (unobserved.size() + observed.size() != support.size()) {
    throw std::invalid_argument("kl_decomposition: observed not in support");
  }

  double q_s = 0.0;
  for (u32 x : support) q_s += model.mass[x];
  if (q_s <= 0.0) {
    throw std::invalid_argument("kl_decomposition: q(S) = 0 is degenerate");
  }
  q_s = std::min(q_s, 1.0);  // guard the fp case q(S) = 1 + eps

  double a = 0.0, q_u = 0.0, q_o = 0.0;
  for (u32 x : unobserved) {
    a += target.mass[x];
    q_u += model.mass[x];
  }
  for (u32 x : observed) q_o += model.mass[x];

  out.a = a;
  out.b = q_u / q_s;
  out.support_leakage = std::log(1.0 / q_s);

  auto bern_term = [&](double p, double q) {
    if (p <= 0.0) return 0.0;
    double qc = q;
    if (qc < kl_floor) {
      qc = kl_floor;
      out.clamped = true;
    }
    return p * std::log(p / qc);
  };
  out.mass_split = bern_term(a, out.b) + bern_term(1.0 - a, 1.0 - out.b);

  if (a > 0.0 && !unobserved.empty()) {
    out.unseen_shape =
        a * kl_sum(target, model, unobserved, a, q_u, out.clamped);
  }
  if (a < 1.0 && !observed.empty()) {
    out.observed_shape =
        (1.0 - a) * kl_sum(target, model, observed, 1.0 - a, q_o, out.clamped);
  }

  bool total_clamped = false;
  out.total = kl_sum(target, model, support, 1.0, 1.0, total_clamped);
  out.clamped = out.clamped || total_clamped;
  return out;
}

double expected_discoveries(const ProbabilityTable& model,
                            const std::vector<u32>& elite, double budget) {
  if (budget < 1.0) {
    throw std::invalid_argument("expected_discoveries: budget must be >= 1");
  }
  double acc = 0.0;
  for (u32 x : elite) {
    const double q = model.mass[x];
    if (q <= 0.0) continue;
    if (q >= 1.0) {
      acc += 1.0;
      continue;
    }
    acc += -std::expm1(budget * std::log1p(-q));
  }
  return acc;
}

CoverageReport coverage_report(const ProbabilityTable& model,
                               const std::vector<u32>& elite,
                               const std::vector<double>& budgets) {
  if (elite.empty()) {
    throw std::invalid_argument(
        "coverage_report: empty elite set (tau misconfigured)");
  }
  CoverageReport report;
  report.budgets = budgets;
  report.elite_size = elite.size();
  for (double q_budget : budgets) {
    const double m = expected_discoveries(model, elite, q_budget);
    report.expected.push_back(m);
    report.coverage.push_back(m / q_budget);
    report.recovery.push_back(m / static_cast<double>(elite.size()));
  }
  return report;
}

}  // namespace iqpbench
