#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "iqpbench/benchmark.hpp"
#include "iqpbench/metrics.hpp"
#include "iqpbench/trainer.hpp"

namespace iqpbench {

inline constexpr const char* software_version = "0.1.0";
inline constexpr const char* config_version = "1";

enum class ModelClass {
  iqp_parity,
  iqp_mse,
  ising_sparse,
  ising_dense,
  maxent,
  spectral_proxy,
  uniform,          // uniform over the full cube
  uniform_support,  // uniform over S
};

std::string model_name(ModelClass m);
std::optional<ModelClass> model_from_name(const std::string& name);
std::vector<ModelClass> parse_model_list(const std::string& csv);
// The trainable classes entering the Table-I style "KL wins" comparison.
const std::vector<ModelClass>& win_comparison_models();

struct SweepSpec {
  std::vector<double> betas;   // default 0.1..2.0 step 0.1
  std::vector<u64> seeds;      // default 111..120
  int n = 12;
  int m = 200;
  double sigma = 1.0;
  int K = 512;
  double tau = 0.1;
  std::vector<ModelClass> models;   // default: all
  std::vector<double> budgets;      // default {1000, 2000, 5000}
  OptimizerConfig opt;              // shared training protocol
  double iqp_init_stddev = 0.05;    // IQP angle init scale
  double iqp_learning_rate = 0.03;  // IQP optimizer step size

  static SweepSpec reference();
  std::vector<BenchmarkConfig> instance_configs() const;
};

// One record per (instance, model); append-only unit of the result store.
struct RunRecord {
  std::string key;  // content hash of identity + config version
  BenchmarkConfig config;
  std::string model;
  double kl = 0.0;
  bool kl_clamped = false;
  KlBreakdown decomposition;
  CoverageReport coverage_metrics;
  double negative_mass_clipped = 0.0;  // spectral proxy only
  std::string train_checksum;
  std::string band_checksum;
  std::string params_json;        // trained parameter record
  std::vector<double> loss_trace;
  bool diverged = false;
  std::string divergence_reason;
  double wall_ms = 0.0;
  std::string version;

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
};

std::string record_key(const BenchmarkConfig& config, const std::string& model,
                       const OptimizerConfig& opt, double iqp_lr,
                       double iqp_init);

// Append-only line-delimited JSON store keyed by record content hashes.
class ResultStore {
 public:
  explicit ResultStore(std::string path);

  bool contains(const std::string& key) const;
  void append(const RunRecord& record);  // thread-safe, flushes per record
  const std::vector<RunRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  static std::vector<RunRecord> load(const std::string& path);

 private:
  std::string path_;
  std::vector<RunRecord> records_;
  std::map<std::string, std::size_t> index_;
  mutable std::mutex mutex_;
};

// Trains / evaluates the requested models on one instance.  Training
// divergence is captured in the record, not thrown.
std::vector<RunRecord> run_instance(const Instance& inst,
                                    const std::vector<ModelClass>& models,
                                    const SweepSpec& spec);

struct SweepProgress {
  std::size_t done = 0;
  std::size_t total = 0;
};

// Executes all (instance, model) tasks over a worker pool; records already
// present in the store are skipped, so an interrupted sweep resumes.
void run_sweep(const SweepSpec& spec, int workers, ResultStore& store,
               bool quiet = false);

// Aggregations over a record set.
struct ModelSummary {
  std::string model;
  int count = 0;
  double mean_kl = 0.0;
  double ci95 = 0.0;  // 1.96 * sd / sqrt(count)
  double median_kl = 0.0;
  int kl_wins = 0;
  bool win_ties = false;
  double mean_coverage_1000 = 0.0;
};

struct Summary {
  std::vector<ModelSummary> per_model;               // Table-I analog
  // (model, beta) -> (mean KL, mean C(1000)); Fig-4 analog
  std::map<std::pair<std::string, double>, std::pair<double, double>> by_beta;
  // (model, sigma, K) -> mean KL; Fig-3 analog
  std::map<std::tuple<std::string, double, int>, double> band_grid;
  // (model, budget) -> mean recovery; Fig-5 analog
  std::map<std::pair<std::string, double>, double> recovery_curves;
  // (model, n) -> median KL; Table-IV analog
  std::map<std::pair<std::string, int>, double> median_kl_by_n;
};

Summary summarize(const std::vector<RunRecord>& records,
                  const std::vector<ModelClass>& win_models =
                      win_comparison_models());

// CSV and JSONL exports; creates out_dir if needed.  Empty stores produce
// header-only files.
void export_store(const std::vector<RunRecord>& records,
                  const std::string& out_dir);

}  // namespace iqpbench
