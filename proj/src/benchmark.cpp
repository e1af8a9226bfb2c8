#include "iqpbench/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace iqpbench {

std::vector<u32> valid_support(int n) {
  if (n < 2 || n > max_bits) {
    throw std::invalid_argument("valid_support: n out of range");
  }
  std::vector<u32> out;
  out.reserve(std::size_t{1} << (n - 1));
  const u32 size = u32{1} << n;
  for (u32 x = 0; x < size; ++x) {
    if (even_parity(x)) out.push_back(x);
  }
  return out;
}

int score(u32 x, int n) {
  int best = 0;
  int prev_one = -1;
  for (int i = 0; i < n; ++i) {
    if ((x >> i) & 1u) {
      if (prev_one >= 0 && i - prev_one - 1 > best) best = i - prev_one - 1;
      prev_one = i;
    }
  }
  return best;
}

ProbabilityTable target_distribution(int n, double beta) {
  if (beta < 0.0) {
    throw std::invalid_argument("target_distribution: beta must be >= 0");
  }
  const std::size_t size = std::size_t{1} << n;
  ProbabilityTable t{n, std::vector<double>(size, 0.0)};
  int max_score = 0;
  for (u32 x = 0; x < size; ++x) {
    if (even_parity(x)) max_score = std::max(max_score, score(x, n));
  }
  double sum = 0.0;
  for (u32 x = 0; x < size; ++x) {
    if (even_parity(x)) {
      const double w = std::exp(beta * (score(x, n) - max_score));
      t.mass[x] = w;
      sum += w;
    }
  }
  for (double& m : t.mass) m /= sum;
  return t;
}

std::vector<u32> sample_training_set(const ProbabilityTable& target, int m,
                                     Rng& rng) {
  if (m < 1) throw std::invalid_argument("sample_training_set: m must be >= 1");
  std::vector<double> cum(target.mass.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < target.mass.size(); ++i) {
    acc += target.mass[i];
    cum[i] = acc;
  }
  std::vector<u32> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    out.push_back(static_cast<u32>(it - cum.begin()));
  }
  return out;
}

int score_quantile(const std::vector<u32>& support, int n, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("score_quantile: tau out of (0, 1]");
  }
  std::map<int, std::size_t> level_counts;
  for (u32 x : support) ++level_counts[score(x, n)];
  const double need = (1.0 - tau) * static_cast<double>(support.size());
  std::size_t cum = 0;
  for (const auto& [level, count] : level_counts) {
    cum += count;
    if (static_cast<double>(cum) >= need) return level;
  }
  return level_counts.rbegin()->first;
}

Instance make_instance(const BenchmarkConfig& config) {
  Instance inst;
  inst.config = config;
  inst.target = target_distribution(config.n, config.beta);
  inst.support = valid_support(config.n);

  const u64 master =
      instance_master_seed(config.n, config.beta, config.seed, config.m);
  Rng train_rng(stream_seed(master, StreamTag::train_sampling));
  inst.train = sample_training_set(inst.target, config.m, train_rng);

  Rng band_rng(band_stream_seed(master, config.sigma, config.K));
  inst.band.sigma = config.sigma;
  inst.band.masks = sample_band(config.sigma, config.K, config.n, band_rng);
  inst.band.target_moments = empirical_moments(inst.band.masks, inst.train);

  inst.observed = inst.train;
  std::sort(inst.observed.begin(), inst.observed.end());
  inst.observed.erase(
      std::unique(inst.observed.begin(), inst.observed.end()),
      inst.observed.end());

  inst.unobserved.reserve(inst.support.size());
  std::set_difference(inst.support.begin(), inst.support.end(),
                      inst.observed.begin(), inst.observed.end(),
                      std::back_inserter(inst.unobserved));

  inst.score_threshold = score_quantile(inst.support, config.n, config.tau);
  for (u32 x : inst.support) {
    if (score(x, config.n) >= inst.score_threshold) {
      inst.high_value.push_back(x);
    }
  }
  if (inst.high_value.empty()) {
    throw std::runtime_error("make_instance: degenerate empty H_tau");
  }
  std::set_intersection(inst.high_value.begin(), inst.high_value.end(),
                        inst.unobserved.begin(), inst.unobserved.end(),
                        std::back_inserter(inst.unseen_elite));
  return inst;
}

ProbabilityTable Instance::empirical_table() const {
  ProbabilityTable t{config.n,
                     std::vector<double>(std::size_t{1} << config.n, 0.0)};
  const double w = 1.0 / static_cast<double>(train.size());
  for (u32 x : train) t.mass[x] += w;
  return t;
}

std::string instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["config"] = {{"n", inst.config.n},     {"beta", inst.config.beta},
                 {"seed", inst.config.seed}, {"m", inst.config.m},
                 {"sigma", inst.config.sigma}, {"K", inst.config.K},
                 {"tau", inst.config.tau}};
  std::map<u32, int> counts;
  for (u32 x : inst.train) ++counts[x];
  nlohmann::json train = nlohmann::json::array();
  for (const auto& [value, count] : counts) {
    train.push_back({{"value", value}, {"count", count}});
  }
  j["train"] = std::move(train);
  j["band_masks"] = inst.band.masks;
  j["band_sigma"] = inst.band.sigma;
  j["target_checksum"] = hex64(inst.target_checksum());
  j["score_threshold"] = inst.score_threshold;
  j["set_sizes"] = {{"S", inst.support.size()},
                    {"O", inst.observed.size()},
                    {"U", inst.unobserved.size()},
                    {"H", inst.high_value.size()},
                    {"E", inst.unseen_elite.size()}};
  return j.dump();
}

}  // namespace iqpbench
