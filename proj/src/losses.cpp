#include "iqpbench/losses.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "iqpbench/fwht.hpp"

namespace iqpbench {

double parity_loss(const ProbabilityTable& model, const ParityBand& band) {
  if (band.masks.empty()) throw std::invalid_argument("parity_loss: empty band");
  const std::vector<double> moments = fwht(model.mass);
  double loss = 0.0;
  for (std::size_t k = 0; k < band.masks.size(); ++k) {
    const double r = moments[band.masks[k]] - band.target_moments[k];
    loss += r * r;
  }
  return loss / static_cast<double>(band.masks.size());
}

std::vector<double> parity_loss_cotangent(const ProbabilityTable& model,
                                          const ParityBand& band) {
  const std::vector<double> moments = fwht(model.mass);
  // dL/dq(x) = (2/K) sum_k (qhat_k - zhat_k) phi_k(x): one transform of the
  // sparse residual vector; duplicate masks accumulate.
  std::vector<double> d(model.mass.size(), 0.0);
  const double scale = 2.0 / static_cast<double>(band.masks.size());
  for (std::size_t k = 0; k < band.masks.size(); ++k) {
    d[band.masks[k]] +=
        scale * (moments[band.masks[k]] - band.target_moments[k]);
  }
  fwht_inplace(std::span<double>(d));
  return d;
}

double mse_loss(const ProbabilityTable& model,
                const ProbabilityTable& train_table,
                const std::vector<u32>& support) {
  if (support.empty()) throw std::invalid_argument("mse_loss: empty support");
  double loss = 0.0;
  for (u32 x : support) {
    const double r = model.mass[x] - train_table.mass[x];
    loss += r * r;
  }
  return loss / static_cast<double>(support.size());
}

std::vector<double> mse_loss_cotangent(const ProbabilityTable& model,
                                       const ProbabilityTable& train_table,
                                       const std::vector<u32>& support) {
  std::vector<double> cot(model.mass.size(), 0.0);
  const double scale = 2.0 / static_cast<double>(support.size());
  for (u32 x : support) {
    cot[x] = scale * (model.mass[x] - train_table.mass[x]);
  }
  return cot;
}

double cross_entropy_loss(const ProbabilityTable& model,
                          const ProbabilityTable& train_table) {
  double loss = 0.0;
  for (std::size_t x = 0; x < train_table.mass.size(); ++x) {
    const double p = train_table.mass[x];
    if (p <= 0.0) continue;
    if (model.mass[x] <= 0.0) return std::numeric_limits<double>::infinity();
    loss -= p * std::log(model.mass[x]);
  }
  return loss;
}

std::vector<double> cross_entropy_cotangent(
    const ProbabilityTable& model, const ProbabilityTable& train_table) {
  std::vector<double> cot(model.mass.size(), 0.0);
  for (std::size_t x = 0; x < train_table.mass.size(); ++x) {
    const double p = train_table.mass[x];
    if (p <= 0.0) continue;
    cot[x] = -p / model.mass[x];
  }
  return cot;
}

}  // namespace iqpbench
