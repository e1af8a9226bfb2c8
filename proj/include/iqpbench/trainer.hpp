#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iqpbench/benchmark.hpp"
#include "iqpbench/losses.hpp"

namespace iqpbench {

struct OptimizerConfig {
  double learning_rate = 0.05;
  int steps = 600;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Full-batch objective: writes the gradient and returns the loss value.
using Objective =
    std::function<double(const std::vector<double>&, std::vector<double>&)>;

struct TrainResult {
  std::vector<double> params;
  std::vector<double> loss_trace;  // loss at each step, pre-update
};

// Raised when a loss or gradient goes non-finite; carries the trace up to
// the failing step for forensics.
class TrainingDivergence : public std::runtime_error {
 public:
  TrainingDivergence(const std::string& what, std::vector<double> trace)
      : std::runtime_error(what), loss_trace(std::move(trace)) {}
  std::vector<double> loss_trace;
};

// Deterministic Adam loop on an exact objective.
TrainResult train(const Objective& objective, std::vector<double> init,
                  const OptimizerConfig& opt);

// Per-model-class defaults and objective assembly.
struct TrainedModel {
  std::vector<double> params;
  std::vector<double> loss_trace;
  ProbabilityTable table;
};

// Builds the objective for a (model class, loss) pairing over an instance
// and runs the matched training protocol.
TrainedModel train_iqp(const Instance& inst, LossKind kind,
                       const std::vector<double>& init,
                       const OptimizerConfig& opt);
TrainedModel train_ising_sparse(const Instance& inst,
                                const OptimizerConfig& opt);
TrainedModel train_ising_dense(const Instance& inst,
                               const OptimizerConfig& opt);
TrainedModel train_maxent(const Instance& inst, const OptimizerConfig& opt);

// IQP initialization: i.i.d. Gaussian angles from the instance's
// model-init stream, shared by the parity and MSE variants.
std::vector<double> iqp_initial_angles(const Instance& inst, double stddev);

}  // namespace iqpbench
