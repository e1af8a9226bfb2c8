#pragma once

#include <vector>

#include "iqpbench/bits.hpp"
#include "iqpbench/prob.hpp"

namespace iqpbench {

// Model probabilities are clamped below at this floor inside the KL sums;
// a clamp is flagged rather than silently smoothed.
constexpr double kl_floor = 1e-300;

struct KlValue {
  double value = 0.0;
  bool clamped = false;
};

// Exact forward KL sum_{x in support} p(x) log(p(x)/q(x)), natural log.
KlValue forward_kl(const ProbabilityTable& target,
                   const ProbabilityTable& model,
                   const std::vector<u32>& support);

// Conditional split of the forward KL: support leakage log(1/q(S)),
// observed/unobserved mass mismatch, and the two conditional shape terms.
struct KlBreakdown {
  double total = 0.0;           // forward KL, computed directly
  double support_leakage = 0.0; // log(1/q(S))
  double mass_split = 0.0;      // KL(Bern(a) || Bern(b))
  double unseen_shape = 0.0;    // a * KL(p*_U || q_U)
  double observed_shape = 0.0;  // (1-a) * KL(p*_O || q_O)
  double a = 0.0;               // p*(U)
  double b = 0.0;               // q(U) / q(S)
  bool clamped = false;
};

KlBreakdown kl_decomposition(const ProbabilityTable& target,
                             const ProbabilityTable& model,
                             const std::vector<u32>& observed,
                             const std::vector<u32>& support);

// Occupancy expectation sum_{x in elite} [1 - (1 - q(x))^Q], evaluated
// stably through expm1/log1p.
double expected_discoveries(const ProbabilityTable& model,
                            const std::vector<u32>& elite, double budget);

struct CoverageReport {
  std::vector<double> budgets;
  std::vector<double> expected;  // M_q(Q)
  std::vector<double> coverage;  // C_q(Q) = M/Q
  std::vector<double> recovery;  // R_q(Q) = M/|E|
  std::size_t elite_size = 0;
};

CoverageReport coverage_report(const ProbabilityTable& model,
                               const std::vector<u32>& elite,
                               const std::vector<double>& budgets);

}  // namespace iqpbench
