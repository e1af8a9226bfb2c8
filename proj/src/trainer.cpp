#include "iqpbench/trainer.hpp"

#include <cmath>

#include "iqpbench/models.hpp"

namespace iqpbench {

TrainResult train(const Objective& objective, std::vector<double> init,
                  const OptimizerConfig& opt) {
  TrainResult result;
  result.params = std::move(init);
  result.loss_trace.reserve(static_cast<std::size_t>(opt.steps));

  std::vector<double> grad(result.params.size(), 0.0);
  std::vector<double> m(result.params.size(), 0.0);
  std::vector<double> v(result.params.size(), 0.0);

  for (int t = 1; t <= opt.steps; ++t) {
    const double loss = objective(result.params, grad);
    if (!std::isfinite(loss)) {
      throw TrainingDivergence(
          "train: non-finite loss at step " + std::to_string(t),
          result.loss_trace);
    }
    for (double g : grad) {
      if (!std::isfinite(g)) {
        throw TrainingDivergence(
            "train: non-finite gradient at step " + std::to_string(t),
            result.loss_trace);
      }
    }
    result.loss_trace.push_back(loss);

    const double c1 = 1.0 - std::pow(opt.beta1, t);
    const double c2 = 1.0 - std::pow(opt.beta2, t);
    for (std::size_t i = 0; i < result.params.size(); ++i) {
      m[i] = opt.beta1 * m[i] + (1.0 - opt.beta1) * grad[i];
      v[i] = opt.beta2 * v[i] + (1.0 - opt.beta2) * grad[i] * grad[i];
      result.params[i] -=
          opt.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + opt.epsilon);
    }
  }
  return result;
}

std::vector<double> iqp_initial_angles(const Instance& inst, double stddev) {
  const u64 master = instance_master_seed(inst.config.n, inst.config.beta,
                                          inst.config.seed, inst.config.m);
  Rng rng(stream_seed(master, StreamTag::iqp_init));
  std::vector<double> theta(2 * static_cast<std::size_t>(inst.config.n));
  for (double& t : theta) t = stddev * rng.gaussian();
  return theta;
}

TrainedModel train_iqp(const Instance& inst, LossKind kind,
                       const std::vector<double>& init,
                       const OptimizerConfig& opt) {
  IqpParams params = IqpParams::ring(inst.config.n);
  const ProbabilityTable train_table = inst.empirical_table();

  Objective objective = [&](const std::vector<double>& theta,
                            std::vector<double>& grad) {
    params.theta = theta;
    const IqpEvaluation eval = iqp_evaluate(params);
    double loss;
    std::vector<double> cot;
    if (kind == LossKind::parity) {
      loss = parity_loss(eval.table, inst.band);
      cot = parity_loss_cotangent(eval.table, inst.band);
    } else if (kind == LossKind::mse) {
      loss = mse_loss(eval.table, train_table, inst.support);
      cot = mse_loss_cotangent(eval.table, train_table, inst.support);
    } else {
      throw std::invalid_argument("train_iqp: unsupported loss kind");
    }
    grad = iqp_gradient(params, eval, cot);
    return loss;
  };

  TrainResult r = train(objective, init, opt);
  params.theta = r.params;
  return {std::move(r.params), std::move(r.loss_trace),
          iqp_distribution(params)};
}

namespace {

TrainedModel train_ising(const Instance& inst, IsingParams params,
                         LossKind kind, const OptimizerConfig& opt) {
  const ProbabilityTable train_table = inst.empirical_table();

  Objective objective = [&](const std::vector<double>& w,
                            std::vector<double>& grad) {
    params.set_flat(w);
    const ProbabilityTable table = ising_distribution(params);
    double loss;
    std::vector<double> cot;
    if (kind == LossKind::parity) {
      loss = parity_loss(table, inst.band);
      cot = parity_loss_cotangent(table, inst.band);
    } else if (kind == LossKind::cross_entropy) {
      loss = cross_entropy_loss(table, train_table);
      if (!std::isfinite(loss)) return loss;  // reported by train()
      cot = cross_entropy_cotangent(table, train_table);
    } else {
      throw std::invalid_argument("train_ising: unsupported loss kind");
    }
    grad = ising_gradient(params, table, cot);
    return loss;
  };

  std::vector<double> init(params.flat().size(), 0.0);
  TrainResult r = train(objective, std::move(init), opt);
  params.set_flat(r.params);
  return {std::move(r.params), std::move(r.loss_trace),
          ising_distribution(params)};
}

}  // namespace

TrainedModel train_ising_sparse(const Instance& inst,
                                const OptimizerConfig& opt) {
  return train_ising(inst, IsingParams::sparse(inst.config.n),
                     LossKind::parity, opt);
}

TrainedModel train_ising_dense(const Instance& inst,
                               const OptimizerConfig& opt) {
  return train_ising(inst, IsingParams::dense(inst.config.n),
                     LossKind::cross_entropy, opt);
}

TrainedModel train_maxent(const Instance& inst, const OptimizerConfig& opt) {
  MaxEntParams params;

  Objective objective = [&](const std::vector<double>& theta,
                            std::vector<double>& grad) {
    params.theta = theta;
    auto [value, g] =
        maxent_objective_and_gradient(params, inst.band, inst.config.n);
    grad = std::move(g);
    return value;
  };

  std::vector<double> init(inst.band.masks.size(), 0.0);
  TrainResult r = train(objective, std::move(init), opt);
  params.theta = r.params;
  return {std::move(r.params), std::move(r.loss_trace),
          maxent_distribution(params, inst.band, inst.config.n)};
}

}  // namespace iqpbench
