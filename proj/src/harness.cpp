#include "iqpbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "iqpbench/models.hpp"
#include "iqpbench/spectral.hpp"

namespace iqpbench {

std::string model_name(ModelClass m) {
  switch (m) {
    case ModelClass::iqp_parity: return "iqp-parity";
    case ModelClass::iqp_mse: return "iqp-mse";
    case ModelClass::ising_sparse: return "ising-sparse";
    case ModelClass::ising_dense: return "ising-dense";
    case ModelClass::maxent: return "maxent";
    case ModelClass::spectral_proxy: return "spectral-proxy";
    case ModelClass::uniform: return "uniform";
    case ModelClass::uniform_support: return "uniform-support";
  }
  return "unknown";
}

std::optional<ModelClass> model_from_name(const std::string& name) {
  static const std::vector<ModelClass> all = {
      ModelClass::iqp_parity,   ModelClass::iqp_mse,
      ModelClass::ising_sparse, ModelClass::ising_dense,
      ModelClass::maxent,       ModelClass::spectral_proxy,
      ModelClass::uniform,      ModelClass::uniform_support};
  for (ModelClass m : all) {
    if (model_name(m) == name) return m;
  }
  return std::nullopt;
}

std::vector<ModelClass> parse_model_list(const std::string& csv) {
  std::vector<ModelClass> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto m = model_from_name(item);
    if (!m) throw std::invalid_argument("unknown model class: " + item);
    out.push_back(*m);
  }
  if (out.empty()) throw std::invalid_argument("empty model list");
  return out;
}

const std::vector<ModelClass>& win_comparison_models() {
  static const std::vector<ModelClass> models = {
      ModelClass::iqp_parity, ModelClass::ising_sparse,
      ModelClass::ising_dense, ModelClass::maxent};
  return models;
}

SweepSpec SweepSpec::reference() {
  SweepSpec spec;
  for (int i = 1; i <= 20; ++i) spec.betas.push_back(0.1 * i);
  for (u64 s = 111; s <= 120; ++s) spec.seeds.push_back(s);
  spec.models = {ModelClass::iqp_parity,   ModelClass::iqp_mse,
                 ModelClass::ising_sparse, ModelClass::ising_dense,
                 ModelClass::maxent,       ModelClass::spectral_proxy,
                 ModelClass::uniform,      ModelClass::uniform_support};
  spec.budgets = {1000.0, 2000.0, 5000.0};
  return spec;
}

std::vector<BenchmarkConfig> SweepSpec::instance_configs() const {
  std::vector<BenchmarkConfig> configs;
  for (double beta : betas) {
    for (u64 seed : seeds) {
      BenchmarkConfig c;
      c.n = n;
      c.beta = beta;
      c.seed = seed;
      c.m = m;
      c.sigma = sigma;
      c.K = K;
      c.tau = tau;
      configs.push_back(c);
    }
  }
  return configs;
}

std::string record_key(const BenchmarkConfig& config, const std::string& model,
                       const OptimizerConfig& opt, double iqp_lr,
                       double iqp_init) {
  u64 h = mix64(double_bits(config.beta), config.seed);
  h = mix64(h, static_cast<u64>(config.n));
  h = mix64(h, static_cast<u64>(config.m));
  h = mix64(h, double_bits(config.sigma));
  h = mix64(h, static_cast<u64>(config.K));
  h = mix64(h, double_bits(config.tau));
  for (char c : model) h = mix64(h, static_cast<u64>(c));
  h = mix64(h, double_bits(opt.learning_rate));
  h = mix64(h, static_cast<u64>(opt.steps));
  if (model.rfind("iqp-", 0) == 0) {
    h = mix64(h, double_bits(iqp_lr));
    h = mix64(h, double_bits(iqp_init));
  }
  for (char c : std::string(config_version)) h = mix64(h, static_cast<u64>(c));
  return hex64(h);
}

nlohmann::json RunRecord::to_json() const {
  nlohmann::json j;
  j["key"] = key;
  j["config"] = {{"n", config.n},         {"beta", config.beta},
                 {"seed", config.seed},   {"m", config.m},
                 {"sigma", config.sigma}, {"K", config.K},
                 {"tau", config.tau}};
  j["model"] = model;
  j["metrics"] = {
      {"kl", kl},
      {"kl_clamped", kl_clamped},
      {"decomposition",
       {{"total", decomposition.total},
        {"support_leakage", decomposition.support_leakage},
        {"mass_split", decomposition.mass_split},
        {"unseen_shape", decomposition.unseen_shape},
        {"observed_shape", decomposition.observed_shape},
        {"a", decomposition.a},
        {"b", decomposition.b},
        {"clamped", decomposition.clamped}}},
      {"coverage",
       {{"budgets", coverage_metrics.budgets},
        {"expected", coverage_metrics.expected},
        {"coverage", coverage_metrics.coverage},
        {"recovery", coverage_metrics.recovery},
        {"elite_size", coverage_metrics.elite_size}}},
      {"negative_mass_clipped", negative_mass_clipped}};
  j["train_checksum"] = train_checksum;
  j["band_checksum"] = band_checksum;
  if (!params_json.empty()) j["params"] = nlohmann::json::parse(params_json);
  j["loss_trace"] = loss_trace;
  j["diverged"] = diverged;
  if (diverged) j["divergence_reason"] = divergence_reason;
  j["wall_ms"] = wall_ms;
  j["version"] = version;
  return j;
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
  RunRecord r;
  r.key = j.at("key").get<std::string>();
  const auto& c = j.at("config");
  r.config.n = c.at("n").get<int>();
  r.config.beta = c.at("beta").get<double>();
  r.config.seed = c.at("seed").get<u64>();
  r.config.m = c.at("m").get<int>();
  r.config.sigma = c.at("sigma").get<double>();
  r.config.K = c.at("K").get<int>();
  r.config.tau = c.at("tau").get<double>();
  r.model = j.at("model").get<std::string>();
  const auto& met = j.at("metrics");
  r.kl = met.at("kl").get<double>();
  r.kl_clamped = met.at("kl_clamped").get<bool>();
  const auto& d = met.at("decomposition");
  r.decomposition.total = d.at("total").get<double>();
  r.decomposition.support_leakage = d.at("support_leakage").get<double>();
  r.decomposition.mass_split = d.at("mass_split").get<double>();
  r.decomposition.unseen_shape = d.at("unseen_shape").get<double>();
  r.decomposition.observed_shape = d.at("observed_shape").get<double>();
  r.decomposition.a = d.at("a").get<double>();
  r.decomposition.b = d.at("b").get<double>();
  r.decomposition.clamped = d.at("clamped").get<bool>();
  const auto& cov = met.at("coverage");
  r.coverage_metrics.budgets = cov.at("budgets").get<std::vector<double>>();
  r.coverage_metrics.expected = cov.at("expected").get<std::vector<double>>();
  r.coverage_metrics.coverage = cov.at("coverage").get<std::vector<double>>();
  r.coverage_metrics.recovery = cov.at("recovery").get<std::vector<double>>();
  r.coverage_metrics.elite_size = cov.at("elite_size").get<std::size_t>();
  r.negative_mass_clipped = met.at("negative_mass_clipped").get<double>();
  r.train_checksum = j.at("train_checksum").get<std::string>();
  r.band_checksum = j.at("band_checksum").get<std::string>();
  if (j.contains("params")) r.params_json = j.at("params").dump();
  r.loss_trace = j.at("loss_trace").get<std::vector<double>>();
  r.diverged = j.at("diverged").get<bool>();
  if (j.contains("divergence_reason")) {
    r.divergence_reason = j.at("divergence_reason").get<std::string>();
  }
  r.wall_ms = j.at("wall_ms").get<double>();
  r.version = j.at("version").get<std::string>();
  return r;
}

ResultStore::ResultStore(std::string path) : path_(std::move(path)) {
  if (std::filesystem::exists(path_)) {
    records_ = load(path_);
    for (std::size_t i = 0; i < records_.size(); ++i) {
      index_[records_[i].key] = i;
    }
  }
}

bool ResultStore::contains(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return index_.count(key) > 0;
}

void ResultStore::append(const RunRecord& record) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (index_.count(record.key)) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("ResultStore: cannot open " + path_);
  out << record.to_json().dump() << "\n";
  out.flush();
  index_[record.key] = records_.size();
  records_.push_back(record);
}

std::vector<RunRecord> ResultStore::load(const std::string& path) {
  std::vector<RunRecord> records;
  std::ifstream in(path);
  if (!in) return records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(RunRecord::from_json(nlohmann::json::parse(line)));
  }
  return records;
}

namespace {

RunRecord evaluate_model(const Instance& inst, ModelClass model,
                         const SweepSpec& spec) {
  const auto start = std::chrono::steady_clock::now();

  OptimizerConfig opt = spec.opt;
  RunRecord record;
  record.config = inst.config;
  record.model = model_name(model);
  record.key = record_key(inst.config, record.model, spec.opt,
                          spec.iqp_learning_rate, spec.iqp_init_stddev);
  record.train_checksum = hex64(inst.train_checksum());
  record.band_checksum = hex64(inst.band_checksum());
  record.version = software_version;

  ProbabilityTable table;
  try {
    switch (model) {
      case ModelClass::iqp_parity:
      case ModelClass::iqp_mse: {
        opt.learning_rate = spec.iqp_learning_rate;
        const std::vector<double> init =
            iqp_initial_angles(inst, spec.iqp_init_stddev);
        const LossKind kind = (model == ModelClass::iqp_parity)
                                  ? LossKind::parity
                                  : LossKind::mse;
        TrainedModel trained = train_iqp(inst, kind, init, opt);
        table = std::move(trained.table);
        record.loss_trace = std::move(trained.loss_trace);
        record.params_json =
            params_to_json(record.model, inst.config.n,
                           ring_edges(inst.config.n), trained.params);
        break;
      }
      case ModelClass::ising_sparse: {
        TrainedModel trained = train_ising_sparse(inst, opt);
        table = std::move(trained.table);
        record.loss_trace = std::move(trained.loss_trace);
        record.params_json =
            params_to_json(record.model, inst.config.n,
                           ring_edges(inst.config.n), trained.params);
        break;
      }
      case ModelClass::ising_dense: {
        TrainedModel trained = train_ising_dense(inst, opt);
        table = std::move(trained.table);
        record.loss_trace = std::move(trained.loss_trace);
        record.params_json =
            params_to_json(record.model, inst.config.n,
                           dense_pairs(inst.config.n), trained.params);
        break;
      }
      case ModelClass::maxent: {
        TrainedModel trained = train_maxent(inst, opt);
        table = std::move(trained.table);
        record.loss_trace = std::move(trained.loss_trace);
        record.params_json =
            params_to_json(record.model, inst.config.n, {}, trained.params);
        break;
      }
      case ModelClass::spectral_proxy: {
        SpectralProxy proxy = spectral_proxy(inst.band, inst.config.n);
        table = std::move(proxy.projected);
        record.negative_mass_clipped = proxy.negative_mass_clipped;
        break;
      }
      case ModelClass::uniform:
        table = uniform_table(inst.config.n);
        break;
      case ModelClass::uniform_support:
        table = uniform_on(inst.config.n, inst.support);
        break;
    }
  } catch (const TrainingDivergence& e) {
    record.diverged = true;
    record.divergence_reason = e.what();
    record.loss_trace = e.loss_trace;
    record.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return record;
  }

  const KlValue kl = forward_kl(inst.target, table, inst.support);
  record.kl = kl.value;
  record.kl_clamped = kl.clamped;
  record.decomposition =
      kl_decomposition(inst.target, table, inst.observed, inst.support);
  record.coverage_metrics =
      coverage_report(table, inst.unseen_elite, spec.budgets);
  record.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return record;
}

}  // namespace

std::vector<RunRecord> run_instance(const Instance& inst,
                                    const std::vector<ModelClass>& models,
                                    const SweepSpec& spec) {
  std::vector<RunRecord> records;
  records.reserve(models.size());
  for (ModelClass m : models) {
    records.push_back(evaluate_model(inst, m, spec));
  }
  return records;
}

void run_sweep(const SweepSpec& spec, int workers, ResultStore& store,
               bool quiet) {
  const std::vector<BenchmarkConfig> configs = spec.instance_configs();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  const std::size_t total = configs.size();

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) break;
      const BenchmarkConfig& config = configs[i];

      // skip fully completed instances without rebuilding them
      std::vector<ModelClass> pending;
      for (ModelClass m : spec.models) {
        if (!store.contains(record_key(config, model_name(m), spec.opt,
                                       spec.iqp_learning_rate,
                                       spec.iqp_init_stddev))) {
          pending.push_back(m);
        }
      }
      if (!pending.empty()) {
        const Instance inst = make_instance(config);
        for (ModelClass m : pending) {
          store.append(evaluate_model(inst, m, spec));
        }
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (!quiet && (d % 10 == 0 || d == total)) {
        std::cerr << "sweep: " << d << "/" << total << " instances\n";
      }
    }
  };

  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

namespace {

double coverage_at(const RunRecord& r, double budget) {
  for (std::size_t i = 0; i < r.coverage_metrics.budgets.size(); ++i) {
    if (r.coverage_metrics.budgets[i] == budget) {
      return r.coverage_metrics.coverage[i];
    }
  }
  return 0.0;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return (v.size() % 2 == 1) ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

Summary summarize(const std::vector<RunRecord>& records,
                  const std::vector<ModelClass>& win_models) {
  Summary summary;

  std::map<std::string, std::vector<const RunRecord*>> by_model;
  for (const RunRecord& r : records) {
    if (r.diverged) continue;
    by_model[r.model].push_back(&r);
  }

  // KL wins per instance among the comparison classes, ties flagged and
  // broken by model-name order.
  std::map<std::string, int> wins;
  std::map<std::string, bool> tie_flags;
  {
    std::vector<std::string> win_names;
    for (ModelClass m : win_models) win_names.push_back(model_name(m));
    std::map<std::tuple<int, double, u64, double, int>,
             std::vector<const RunRecord*>> by_instance;
    for (const RunRecord& r : records) {
      if (r.diverged) continue;
      if (std::find(win_names.begin(), win_names.end(), r.model) ==
          win_names.end()) {
        continue;
      }
      by_instance[{r.config.n, r.config.beta, r.config.seed, r.config.sigma,
                   r.config.K}]
          .push_back(&r);
    }
    for (const auto& [key, rs] : by_instance) {
      if (rs.size() < 2) continue;
      const RunRecord* best = nullptr;
      bool tie = false;
      for (const RunRecord* r : rs) {
        if (!best || r->kl < best->kl ||
            (r->kl == best->kl && r->model < best->model)) {
          tie = best && r->kl == best->kl;
          best = r;
        } else if (r->kl == best->kl) {
          tie = true;
        }
      }
      ++wins[best->model];
      if (tie) tie_flags[best->model] = true;
    }
  }

  for (const auto& [model, rs] : by_model) {
    ModelSummary ms;
    ms.model = model;
    ms.count = static_cast<int>(rs.size());
    std::vector<double> kls;
    double c1000 = 0.0;
    for (const RunRecord* r : rs) {
      kls.push_back(r->kl);
      c1000 += coverage_at(*r, 1000.0);
    }
    double mean = 0.0;
    for (double k : kls) mean += k;
    mean /= static_cast<double>(kls.size());
    double var = 0.0;
    for (double k : kls) var += (k - mean) * (k - mean);
    const double sd = kls.size() > 1
                          ? std::sqrt(var / static_cast<double>(kls.size() - 1))
                          : 0.0;
    ms.mean_kl = mean;
    ms.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(kls.size()));
    ms.median_kl = median(kls);
    ms.kl_wins = wins.count(model) ? wins[model] : 0;
    ms.win_ties = tie_flags.count(model) > 0;
    ms.mean_coverage_1000 = c1000 / static_cast<double>(rs.size());
    summary.per_model.push_back(ms);

    // per-beta curves
    std::map<double, std::vector<const RunRecord*>> by_beta;
    for (const RunRecord* r : rs) by_beta[r->config.beta].push_back(r);
    for (const auto& [beta, brs] : by_beta) {
      double mk = 0.0, mc = 0.0;
      for (const RunRecord* r : brs) {
        mk += r->kl;
        mc += coverage_at(*r, 1000.0);
      }
      summary.by_beta[{model, beta}] = {mk / brs.size(), mc / brs.size()};
    }

    // (sigma, K) grid
    std::map<std::pair<double, int>, std::vector<double>> grid;
    for (const RunRecord* r : rs) {
      grid[{r->config.sigma, r->config.K}].push_back(r->kl);
    }
    for (const auto& [cell, kl_list] : grid) {
      double mk = 0.0;
      for (double k : kl_list) mk += k;
      summary.band_grid[{model, cell.first, cell.second}] =
          mk / kl_list.size();
    }

    // recovery curves over budgets
    std::map<double, std::pair<double, int>> rec;
    for (const RunRecord* r : rs) {
      for (std::size_t i = 0; i < r->coverage_metrics.budgets.size(); ++i) {
        auto& [acc, cnt] = rec[r->coverage_metrics.budgets[i]];
        acc += r->coverage_metrics.recovery[i];
        ++cnt;
      }
    }
    for (const auto& [budget, acc_cnt] : rec) {
      summary.recovery_curves[{model, budget}] =
          acc_cnt.first / acc_cnt.second;
    }

    // median KL by n
    std::map<int, std::vector<double>> by_n;
    for (const RunRecord* r : rs) by_n[r->config.n].push_back(r->kl);
    for (auto& [nn, kl_list] : by_n) {
      summary.median_kl_by_n[{model, nn}] = median(kl_list);
    }
  }
  return summary;
}

void export_store(const std::vector<RunRecord>& records,
                  const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const Summary summary = summarize(records);

  {
    std::vector<const RunRecord*> sorted;
    for (const RunRecord& r : records) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](const RunRecord* a, const RunRecord* b) {
                return a->key < b->key;
              });
    std::ofstream out(out_dir + "/records.jsonl");
    for (const RunRecord* r : sorted) out << r->to_json().dump() << "\n";
  }
  {
    std::ofstream out(out_dir + "/summary_table.csv");
    out << "model,mean_kl,ci95,median_kl,kl_wins,mean_coverage_1000\n";
    for (const ModelSummary& ms : summary.per_model) {
      out << ms.model << "," << ms.mean_kl << "," << ms.ci95 << ","
          << ms.median_kl << "," << ms.kl_wins << ","
          << ms.mean_coverage_1000 << "\n";
    }
  }
  {
    std::ofstream out(out_dir + "/kl_by_beta.csv");
    out << "model,beta,mean_kl,mean_coverage_1000\n";
    for (const auto& [key, value] : summary.by_beta) {
      out << key.first << "," << key.second << "," << value.first << ","
          << value.second << "\n";
    }
  }
  {
    std::ofstream out(out_dir + "/band_grid.csv");
    out << "model,sigma,K,mean_kl\n";
    for (const auto& [key, mk] : summary.band_grid) {
      out << std::get<0>(key) << "," << std::get<1>(key) << ","
          << std::get<2>(key) << "," << mk << "\n";
    }
  }
  {
    std::ofstream out(out_dir + "/recovery_curves.csv");
    out << "model,budget,mean_recovery\n";
    for (const auto& [key, mr] : summary.recovery_curves) {
      out << key.first << "," << key.second << "," << mr << "\n";
    }
  }
  {
    std::ofstream out(out_dir + "/median_kl_by_n.csv");
    out << "model,n,median_kl\n";
    for (const auto& [key, mk] : summary.median_kl_by_n) {
      out << key.first << "," << key.second << "," << mk << "\n";
    }
  }
}

}  // namespace iqpbench
