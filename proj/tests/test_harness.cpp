#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <unistd.h>

#include "iqpbench/harness.hpp"

using namespace iqpbench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("iqpbench-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

SweepSpec tiny_spec() {
  SweepSpec spec = SweepSpec::reference();
  spec.n = 8;
  spec.K = 32;
  spec.m = 60;
  spec.betas = {0.9};
  spec.seeds = {111};
  spec.opt.steps = 60;
  spec.models = {ModelClass::uniform, ModelClass::spectral_proxy};
  return spec;
}

// comparable view of a record set, volatile fields dropped
std::map<std::string, std::string> canonical(const std::vector<RunRecord>& rs) {
  std::map<std::string, std::string> out;
  for (RunRecord r : rs) {
    r.wall_ms = 0.0;
    out[r.key] = r.to_json().dump();
  }
  return out;
}

}  // namespace

TEST_CASE("model names round-trip") {
  for (ModelClass m :
       {ModelClass::iqp_parity, ModelClass::iqp_mse, ModelClass::ising_sparse,
        ModelClass::ising_dense, ModelClass::maxent,
        ModelClass::spectral_proxy, ModelClass::uniform,
        ModelClass::uniform_support}) {
    CHECK(model_from_name(model_name(m)) == m);
  }
  CHECK_FALSE(model_from_name("transformer").has_value());
  CHECK(parse_model_list("iqp-parity,maxent").size() == 2);
  CHECK_THROWS_AS(parse_model_list("iqp-parity,bogus"), std::invalid_argument);
}

TEST_CASE("uniform model KL at beta 0 is log 2") {
  SweepSpec spec = SweepSpec::reference();
  spec.betas = {0.0};
  spec.seeds = {111};
  spec.models = {ModelClass::uniform};
  const Instance inst = make_instance(spec.instance_configs()[0]);
  const auto records = run_instance(inst, spec.models, spec);
  REQUIRE(records.size() == 1);
  CHECK(records[0].kl == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  // and the decomposition agrees
  CHECK(records[0].decomposition.support_leakage ==
        doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("spectral proxy record carries the clipping diagnostic") {
  SweepSpec spec = tiny_spec();
  const Instance inst = make_instance(spec.instance_configs()[0]);
  const auto records =
      run_instance(inst, {ModelClass::spectral_proxy}, spec);
  REQUIRE(records.size() == 1);
  CHECK(records[0].negative_mass_clipped > 0.0);
}

TEST_CASE("paired models share the training data checksums") {
  SweepSpec spec = tiny_spec();
  spec.models = {ModelClass::iqp_parity, ModelClass::iqp_mse};
  spec.opt.steps = 30;
  const Instance inst = make_instance(spec.instance_configs()[0]);
  const auto records = run_instance(inst, spec.models, spec);
  REQUIRE(records.size() == 2);
  CHECK(records[0].train_checksum == records[1].train_checksum);
  CHECK(records[0].band_checksum == records[1].band_checksum);
  CHECK(records[0].key != records[1].key);
}

TEST_CASE("sweep produces one record per (instance, model)") {
  TempDir tmp;
  SweepSpec spec = tiny_spec();
  ResultStore store(tmp.file("store.jsonl"));
  run_sweep(spec, 1, store, true);
  CHECK(store.size() == 2);
}

TEST_CASE("rerun over a complete store adds nothing") {
  TempDir tmp;
  SweepSpec spec = tiny_spec();
  ResultStore store(tmp.file("store.jsonl"));
  run_sweep(spec, 1, store, true);
  const auto before = canonical(store.records());
  run_sweep(spec, 1, store, true);
  CHECK(canonical(store.records()) == before);
}

TEST_CASE("interrupted sweeps resume to the same store") {
  TempDir tmp;
  SweepSpec full = tiny_spec();
  full.seeds = {111, 112};

  // partial first pass: one model only
  SweepSpec partial = full;
  partial.models = {ModelClass::uniform};
  {
    ResultStore store(tmp.file("resume.jsonl"));
    run_sweep(partial, 1, store, true);
    CHECK(store.size() == 2);
  }
  // reopen and complete
  {
    ResultStore store(tmp.file("resume.jsonl"));
    run_sweep(full, 1, store, true);
    CHECK(store.size() == 4);
  }
  // one-shot reference
  ResultStore fresh(tmp.file("fresh.jsonl"));
  run_sweep(full, 1, fresh, true);
  const auto resumed = ResultStore::load(tmp.file("resume.jsonl"));
  CHECK(canonical(resumed) == canonical(fresh.records()));
}

TEST_CASE("record sets are independent of worker count") {
  TempDir tmp;
  SweepSpec spec = tiny_spec();
  spec.seeds = {111, 112, 113};
  spec.models = {ModelClass::uniform, ModelClass::uniform_support,
                 ModelClass::spectral_proxy};
  ResultStore a(tmp.file("a.jsonl"));
  run_sweep(spec, 1, a, true);
  ResultStore b(tmp.file("b.jsonl"));
  run_sweep(spec, 4, b, true);
  CHECK(canonical(a.records()) == canonical(b.records()));
}

TEST_CASE("records survive a JSON round trip") {
  TempDir tmp;
  SweepSpec spec = tiny_spec();
  spec.models = {ModelClass::maxent};
  spec.opt.steps = 25;
  ResultStore store(tmp.file("store.jsonl"));
  run_sweep(spec, 1, store, true);
  REQUIRE(store.size() == 1);
  const RunRecord& r = store.records()[0];
  const RunRecord back = RunRecord::from_json(r.to_json());
  CHECK(back.to_json().dump() == r.to_json().dump());
  CHECK(back.kl == r.kl);
  CHECK(back.loss_trace == r.loss_trace);
}

TEST_CASE("summarize") {
  SUBCASE("single record statistics") {
    TempDir tmp;
    SweepSpec spec = tiny_spec();
    spec.models = {ModelClass::uniform};
    ResultStore store(tmp.file("s.jsonl"));
    run_sweep(spec, 1, store, true);
    const Summary s = summarize(store.records());
    REQUIRE(s.per_model.size() == 1);
    CHECK(s.per_model[0].count == 1);
    CHECK(s.per_model[0].mean_kl == doctest::Approx(s.per_model[0].median_kl));
    CHECK(s.per_model[0].ci95 == 0.0);
  }

  SUBCASE("uniformly dominated model wins every instance") {
    TempDir tmp;
    SweepSpec spec = tiny_spec();
    spec.seeds = {111, 112, 113};
    spec.models = {ModelClass::uniform, ModelClass::uniform_support};
    ResultStore store(tmp.file("s.jsonl"));
    run_sweep(spec, 1, store, true);
    // uniform-support matches the target support, so it dominates
    const Summary s = summarize(
        store.records(),
        {ModelClass::uniform, ModelClass::uniform_support});
    for (const ModelSummary& ms : s.per_model) {
      if (ms.model == "uniform-support") CHECK(ms.kl_wins == 3);
      if (ms.model == "uniform") CHECK(ms.kl_wins == 0);
    }
  }
}

TEST_CASE("export writes valid tables even for an empty store") {
  TempDir tmp;
  export_store({}, tmp.file("out"));
  std::ifstream summary(tmp.file("out") + "/summary_table.csv");
  std::string header;
  std::getline(summary, header);
  CHECK(header == "model,mean_kl,ci95,median_kl,kl_wins,mean_coverage_1000");
  CHECK(fs::exists(tmp.file("out") + "/records.jsonl"));
  CHECK(fs::exists(tmp.file("out") + "/kl_by_beta.csv"));
  CHECK(fs::exists(tmp.file("out") + "/band_grid.csv"));
  CHECK(fs::exists(tmp.file("out") + "/recovery_curves.csv"));
  CHECK(fs::exists(tmp.file("out") + "/median_kl_by_n.csv"));
}

TEST_CASE("export round trip") {
  TempDir tmp;
  SweepSpec spec = tiny_spec();
  spec.seeds = {111, 112};
  ResultStore store(tmp.file("store.jsonl"));
  run_sweep(spec, 1, store, true);
  export_store(store.records(), tmp.file("out"));
  const auto reloaded = ResultStore::load(tmp.file("out") + "/records.jsonl");
  CHECK(canonical(reloaded) == canonical(store.records()));
}
