// Command-line driver for the benchmark: instance inspection, single runs,
// the reference sweep, the band ablation, the n-sweep, and store
// summarization/export.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "iqpbench/harness.hpp"

namespace {

using namespace iqpbench;

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<u64> parse_seeds(const std::string& spec) {
  // either "a-b" or comma-separated
  std::vector<u64> out;
  const auto dash = spec.find('-');
  if (dash != std::string::npos && spec.find(',') == std::string::npos) {
    const u64 lo = std::stoull(spec.substr(0, dash));
    const u64 hi = std::stoull(spec.substr(dash + 1));
    for (u64 s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

void print_summary(const Summary& summary) {
  std::cout << "model                count  mean_kl   ci95    median_kl  "
               "kl_wins  mean_C(1000)\n";
  for (const ModelSummary& ms : summary.per_model) {
    std::printf("%-20s %5d  %8.4f  %6.4f  %8.4f  %5d%s   %8.4f\n",
                ms.model.c_str(), ms.count, ms.mean_kl, ms.ci95, ms.median_kl,
                ms.kl_wins, ms.win_ties ? "*" : " ", ms.mean_coverage_1000);
  }
  if (!summary.median_kl_by_n.empty()) {
    bool multi_n = false;
    int first_n = summary.median_kl_by_n.begin()->first.second;
    for (const auto& [key, mk] : summary.median_kl_by_n) {
      if (key.second != first_n) multi_n = true;
    }
    if (multi_n) {
      std::cout << "\nmedian KL by n:\n";
      for (const auto& [key, mk] : summary.median_kl_by_n) {
        std::printf("  %-16s n=%-3d %8.4f\n", key.first.c_str(), key.second,
                    mk);
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact desk-scale benchmark for parity-supervised IQP Born "
               "machines"};
  app.set_config("--config", "", "Config file mirroring all flags");
  app.require_subcommand(1);

  // shared options
  int n = 12;
  double beta = 0.9;
  std::string seeds_spec = "111-120";
  u64 seed = 111;
  int m = 200;
  double sigma = 1.0;
  int K = 512;
  double tau = 0.1;
  std::string models_csv =
      "iqp-parity,iqp-mse,ising-sparse,ising-dense,maxent,spectral-proxy,"
      "uniform,uniform-support";
  std::string budgets_csv = "1000,2000,5000";
  std::string betas_csv;
  std::string out_path = "results.jsonl";
  std::string out_dir = "export";
  std::string store_path = "results.jsonl";
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  double lr = 0.05;
  int steps = 600;
  double iqp_lr = 0.03;
  double iqp_init = 0.05;
  std::string sigmas_csv = "0.5,1,2,3";
  std::string ks_csv = "128,256,512";
  std::string ns_csv = "10,11,12,13,14,15,16,17,18,19,20";
  std::string wins_csv = "iqp-parity,ising-sparse,ising-dense,maxent";
  std::string instance_json;

  auto add_instance_opts = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "qubit count");
    cmd->add_option("--beta", beta, "target sharpness");
    cmd->add_option("--m", m, "training-sample size");
    cmd->add_option("--sigma", sigma, "band parameter");
    cmd->add_option("--K", K, "band width");
    cmd->add_option("--tau", tau, "high-value quantile");
  };
  auto add_train_opts = [&](CLI::App* cmd) {
    cmd->add_option("--lr", lr, "optimizer learning rate (classical models)");
    cmd->add_option("--steps", steps, "optimizer steps");
    cmd->add_option("--iqp-lr", iqp_lr, "IQP learning rate");
    cmd->add_option("--iqp-init", iqp_init, "IQP init angle stddev");
  };
  auto add_out_opt = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "result store path (JSONL)")
        ->envname("IQPBENCH_OUT");
  };

  CLI::App* inst_cmd = app.add_subcommand("instance", "Build and inspect one instance");
  add_instance_opts(inst_cmd);
  inst_cmd->add_option("--seed", seed, "instance seed");
  inst_cmd->add_option("--json", instance_json, "write full instance JSON here");

  CLI::App* run_cmd = app.add_subcommand("run", "Run one instance with chosen models");
  add_instance_opts(run_cmd);
  run_cmd->add_option("--seed", seed, "instance seed");
  run_cmd->add_option("--models", models_csv, "comma-separated model list");
  run_cmd->add_option("--budgets", budgets_csv, "coverage budgets");
  add_train_opts(run_cmd);
  add_out_opt(run_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Full reference sweep");
  add_instance_opts(sweep_cmd);
  sweep_cmd->add_option("--betas", betas_csv, "comma-separated beta list (default 0.1..2.0)");
  sweep_cmd->add_option("--seeds", seeds_spec, "seed list or lo-hi range");
  sweep_cmd->add_option("--models", models_csv, "comma-separated model list");
  sweep_cmd->add_option("--budgets", budgets_csv, "coverage budgets");
  sweep_cmd->add_option("--workers", workers, "worker threads");
  add_train_opts(sweep_cmd);
  add_out_opt(sweep_cmd);

  CLI::App* ablate_cmd = app.add_subcommand(
      "ablate-band", "Fixed-beta (sigma, K) grid ablation");
  add_instance_opts(ablate_cmd);
  ablate_cmd->add_option("--seeds", seeds_spec, "seed list or lo-hi range");
  ablate_cmd->add_option("--sigmas", sigmas_csv, "sigma grid");
  ablate_cmd->add_option("--Ks", ks_csv, "K grid");
  ablate_cmd->add_option("--models", models_csv, "models for the grid");
  ablate_cmd->add_option("--budgets", budgets_csv, "coverage budgets");
  ablate_cmd->add_option("--workers", workers, "worker threads");
  add_train_opts(ablate_cmd);
  add_out_opt(ablate_cmd);

  CLI::App* nsweep_cmd = app.add_subcommand(
      "nsweep", "Size sweep at fixed beta, no per-n retuning");
  nsweep_cmd->add_option("--ns", ns_csv, "comma-separated n list");
  nsweep_cmd->add_option("--beta", beta, "target sharpness");
  nsweep_cmd->add_option("--seeds", seeds_spec, "seed list or lo-hi range");
  nsweep_cmd->add_option("--m", m, "training-sample size");
  nsweep_cmd->add_option("--sigma", sigma, "band parameter");
  nsweep_cmd->add_option("--K", K, "band width");
  nsweep_cmd->add_option("--tau", tau, "high-value quantile");
  nsweep_cmd->add_option("--models", models_csv, "model list");
  nsweep_cmd->add_option("--budgets", budgets_csv, "coverage budgets");
  nsweep_cmd->add_option("--workers", workers, "worker threads");
  add_train_opts(nsweep_cmd);
  add_out_opt(nsweep_cmd);

  CLI::App* summarize_cmd = app.add_subcommand("summarize", "Summarize a result store");
  summarize_cmd->add_option("--store", store_path, "result store path");
  summarize_cmd->add_option("--wins-models", wins_csv,
                            "models entering the KL-wins comparison");

  CLI::App* export_cmd = app.add_subcommand("export", "Export records and CSV tables");
  export_cmd->add_option("--store", store_path, "result store path");
  export_cmd->add_option("--out-dir", out_dir, "output directory")
      ->envname("IQPBENCH_OUT");

  CLI11_PARSE(app, argc, argv);

  try {
    auto make_spec = [&]() {
      SweepSpec spec = SweepSpec::reference();
      spec.n = n;
      spec.m = m;
      spec.sigma = sigma;
      spec.K = K;
      spec.tau = tau;
      spec.models = parse_model_list(models_csv);
      spec.budgets = parse_doubles(budgets_csv);
      spec.opt.learning_rate = lr;
      spec.opt.steps = steps;
      spec.iqp_learning_rate = iqp_lr;
      spec.iqp_init_stddev = iqp_init;
      spec.seeds = parse_seeds(seeds_spec);
      if (!betas_csv.empty()) spec.betas = parse_doubles(betas_csv);
      return spec;
    };

    if (inst_cmd->parsed()) {
      BenchmarkConfig config{n, beta, seed, m, sigma, K, tau};
      const Instance inst = make_instance(config);
      std::cout << "n=" << config.n << " beta=" << config.beta
                << " seed=" << config.seed << "\n"
                << "|S|=" << inst.support.size()
                << " |O|=" << inst.observed.size()
                << " |U|=" << inst.unobserved.size()
                << " |H|=" << inst.high_value.size()
                << " |E|=" << inst.unseen_elite.size()
                << " score_threshold=" << inst.score_threshold << "\n"
                << "train_checksum=" << hex64(inst.train_checksum())
                << " band_checksum=" << hex64(inst.band_checksum()) << "\n";
      if (!instance_json.empty()) {
        std::ofstream out(instance_json);
        out << instance_to_json(inst) << "\n";
        std::cout << "wrote " << instance_json << "\n";
      }
      return 0;
    }

    if (run_cmd->parsed()) {
      SweepSpec spec = make_spec();
      spec.betas = {beta};
      spec.seeds = {seed};
      ResultStore store(out_path);
      run_sweep(spec, 1, store, true);
      print_summary(summarize(store.records()));
      std::cout << "store: " << out_path << " (" << store.size()
                << " records)\n";
      return 0;
    }

    if (sweep_cmd->parsed()) {
      SweepSpec spec = make_spec();
      ResultStore store(out_path);
      run_sweep(spec, workers, store);
      print_summary(summarize(store.records()));
      std::cout << "store: " << out_path << " (" << store.size()
                << " records)\n";
      return 0;
    }

    if (ablate_cmd->parsed()) {
      ResultStore store(out_path);
      for (double s : parse_doubles(sigmas_csv)) {
        for (int k : parse_ints(ks_csv)) {
          SweepSpec spec = make_spec();
          spec.betas = {beta};
          spec.sigma = s;
          spec.K = k;
          run_sweep(spec, workers, store, true);
          std::cerr << "ablate-band: done sigma=" << s << " K=" << k << "\n";
        }
      }
      print_summary(summarize(store.records()));
      return 0;
    }

    if (nsweep_cmd->parsed()) {
      ResultStore store(out_path);
      for (int nn : parse_ints(ns_csv)) {
        SweepSpec spec = make_spec();
        spec.betas = {beta};
        spec.n = nn;
        run_sweep(spec, workers, store, true);
        std::cerr << "nsweep: done n=" << nn << "\n";
      }
      print_summary(summarize(store.records()));
      return 0;
    }

    if (summarize_cmd->parsed()) {
      const auto records = ResultStore::load(store_path);
      print_summary(summarize(records, parse_model_list(wins_csv)));
      return 0;
    }

    if (export_cmd->parsed()) {
      const auto records = ResultStore::load(store_path);
      export_store(records, out_dir);
      std::cout << "exported " << records.size() << " records to " << out_dir
                << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
