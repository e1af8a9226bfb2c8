#pragma once

#include <vector>

#include "iqpbench/band.hpp"
#include "iqpbench/prob.hpp"

namespace iqpbench {

enum class LossKind { parity, mse, cross_entropy, maxent_dual };

// Companion data for a loss; pointers are non-owning views into the
// instance that outlives the spec.
struct LossSpec {
  LossKind kind = LossKind::parity;
  const ParityBand* band = nullptr;            // parity / maxent_dual
  const ProbabilityTable* train_table = nullptr;  // mse / cross_entropy
  const std::vector<u32>* support = nullptr;   // mse summation set
};

// (1/K) sum_k (qhat(alpha_k) - zhat_k)^2, model moments via one transform.
double parity_loss(const ProbabilityTable& model, const ParityBand& band);
// dLoss/dmass for the parity loss (dense vector over states).
std::vector<double> parity_loss_cotangent(const ProbabilityTable& model,
                                          const ParityBand& band);

// (1/|support|) sum_{x in support} (q(x) - phat(x))^2.
double mse_loss(const ProbabilityTable& model,
                const ProbabilityTable& train_table,
                const std::vector<u32>& support);
std::vector<double> mse_loss_cotangent(const ProbabilityTable& model,
                                       const ProbabilityTable& train_table,
                                       const std::vector<u32>& support);

// -sum_x phat(x) log q(x); +inf when the model vanishes on an observed
// state (the caller reports that as a divergence).
double cross_entropy_loss(const ProbabilityTable& model,
                          const ProbabilityTable& train_table);
std::vector<double> cross_entropy_cotangent(const ProbabilityTable& model,
                                            const ProbabilityTable& train_table);

}  // namespace iqpbench
