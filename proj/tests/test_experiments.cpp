#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "vpc/errors.hpp"
#include "vpc/experiments.hpp"
#include "vpc/serialize.hpp"

namespace fs = std::filesystem;

namespace {

// Scoped output directory, removed on destruction.
struct TempDir {
  fs::path path;

  explicit TempDir(const char* stem) : path(fs::path("exp_tmp") / stem) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string str() const { return path.string(); }
  bool has(const std::string& file) const { return fs::exists(path / file); }
  std::string read(const std::string& file) const {
    return vpc::read_text_file((path / file).string());
  }
};

vpc::ExperimentConfig tiny(const std::string& name, const std::string& dir) {
  vpc::ExperimentConfig cfg = vpc::default_experiment_config(name);
  cfg.gen.samples_per_class = 10;
  cfg.train.epochs = 3;
  cfg.out_dir = dir;
  return cfg;
}

}  // namespace

TEST_CASE("median of odd, even, and single-element vectors") {
  CHECK(vpc::median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(vpc::median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK(vpc::median({5.0}) == 5.0);
  CHECK_THROWS_AS(vpc::median({}), vpc::invalid_input_error);
}

TEST_CASE("experiment defaults cover the four named studies") {
  vpc::ExperimentConfig b = vpc::default_experiment_config("binary");
  CHECK(b.gen.n_classes == 2);
  CHECK(b.train.loss == vpc::LossKind::mse);
  CHECK(b.seeds == std::vector<std::uint64_t>{1, 2, 3});

  vpc::ExperimentConfig m = vpc::default_experiment_config("multiclass");
  CHECK(m.gen.n_classes == 4);
  CHECK(m.train.loss == vpc::LossKind::cross_entropy);

  vpc::ExperimentConfig d = vpc::default_experiment_config("deep_ablation");
  CHECK(d.seeds == std::vector<std::uint64_t>{1, 2, 3, 4, 5});

  vpc::ExperimentConfig k = vpc::default_experiment_config("benchmark");
  CHECK(k.seeds == std::vector<std::uint64_t>{1});

  CHECK_THROWS_AS(vpc::default_experiment_config("nonsense"),
                  vpc::config_error);
}

TEST_CASE("a small two-class experiment writes its full file set") {
  TempDir dir("binary_a");
  vpc::ExperimentConfig cfg = tiny("binary", dir.str());
  cfg.seeds = {1, 2};
  vpc::ExperimentResult r = vpc::run_experiment(cfg);

  REQUIRE(r.runs.size() == 2);
  CHECK(r.secondary_runs.empty());
  CHECK(r.mlp_runs.empty());
  CHECK(r.runs[0].seed == 1);
  CHECK(r.runs[1].seed == 2);
  CHECK(r.runs[0].param_count == 64);
  CHECK(r.runs[0].model == "single-stack");
  CHECK(r.runs[0].dataset_hash.size() == 16);
  CHECK(r.runs[0].dataset_hash != r.runs[1].dataset_hash);

  for (const char* f :
       {"binary_config.json", "binary_summary.json", "binary_seed1_report.json",
        "binary_seed1_loss.csv", "binary_seed1_confusion.csv",
        "binary_seed2_report.json", "binary_seed2_loss.csv",
        "binary_seed2_confusion.csv"}) {
    CHECK(dir.has(f));
  }

  // Three epochs -> header plus three curve rows.
  std::string curve = dir.read("binary_seed1_loss.csv");
  CHECK(std::count(curve.begin(), curve.end(), '\n') == 4);
}

TEST_CASE("experiment outputs are byte-identical across reruns") {
  TempDir a("repeat_a");
  TempDir b("repeat_b");
  vpc::ExperimentConfig cfg = tiny("binary", a.str());
  cfg.seeds = {1};
  vpc::run_experiment(cfg);
  cfg.out_dir = b.str();
  vpc::run_experiment(cfg);

  int compared = 0;
  for (const auto& entry : fs::directory_iterator(a.path)) {
    const std::string name = entry.path().filename().string();
    // The echoed configuration embeds out_dir and legitimately differs.
    if (name == "binary_config.json") continue;
    CHECK(a.read(name) == b.read(name));
    ++compared;
  }
  CHECK(compared == 4);
}

TEST_CASE("the depth study trains both topologies on identical data") {
  TempDir dir("ablation");
  vpc::ExperimentConfig cfg = tiny("deep_ablation", dir.str());
  cfg.seeds = {1, 2};
  vpc::ExperimentResult r = vpc::run_experiment(cfg);

  REQUIRE(r.runs.size() == 2);
  REQUIRE(r.secondary_runs.size() == 2);
  CHECK(r.mlp_runs.empty());
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    CHECK(r.runs[i].model == "deep-stack");
    CHECK(r.secondary_runs[i].model == "deep-circuit");
    CHECK(r.runs[i].param_count == 128);
    CHECK(r.secondary_runs[i].param_count == 128);
    CHECK(r.runs[i].seed == r.secondary_runs[i].seed);
    CHECK(r.runs[i].dataset_hash == r.secondary_runs[i].dataset_hash);
  }
  CHECK(dir.has("deep_ablation_deep_stack_seed1_report.json"));
  CHECK(dir.has("deep_ablation_deep_circuit_seed1_report.json"));
  CHECK(dir.has("deep_ablation_summary.json"));

  std::string summary = dir.read("deep_ablation_summary.json");
  CHECK(summary.find("\"deep-stack\"") != std::string::npos);
  CHECK(summary.find("\"deep-circuit\"") != std::string::npos);
}

TEST_CASE("the model comparison covers both circuits and the baseline") {
  TempDir dir("bench");
  vpc::ExperimentConfig cfg = tiny("benchmark", dir.str());
  vpc::ExperimentResult r = vpc::run_experiment(cfg);

  REQUIRE(r.runs.size() == 1);
  REQUIRE(r.secondary_runs.size() == 1);
  REQUIRE(r.mlp_runs.size() == 1);
  CHECK(r.runs[0].param_count == 64);
  CHECK(r.secondary_runs[0].param_count == 128);
  CHECK(r.mlp_runs[0].param_count == 2372);
  CHECK(r.mlp_runs[0].model == "mlp");

  CHECK(dir.has("benchmark.csv"));
  CHECK(dir.has("benchmark.txt"));
  std::string csv = dir.read("benchmark.csv");
  CHECK(csv.find("single-stack,64,") != std::string::npos);
  CHECK(csv.find("deep-stack,128,") != std::string::npos);
  CHECK(csv.find("mlp,2372,") != std::string::npos);
}

TEST_CASE("single-arm experiments accept an explicit topology override") {
  TempDir dir("override");
  vpc::ExperimentConfig cfg = tiny("binary", dir.str());
  cfg.seeds = {1};
  cfg.circuit = "deep-stack";
  vpc::ExperimentResult r = vpc::run_experiment(cfg);
  CHECK(r.runs[0].param_count == 128);
  CHECK(r.runs[0].model == "deep-stack");
}

TEST_CASE("fixed-arm experiments reject a topology override") {
  TempDir dir("fixed");
  for (const char* name : {"deep_ablation", "benchmark"}) {
    vpc::ExperimentConfig cfg = tiny(name, dir.str());
    cfg.circuit = "single-stack";
    CHECK_THROWS_AS(vpc::run_experiment(cfg), vpc::config_error);
  }
}

TEST_CASE("empty seed lists fall back to the experiment defaults") {
  TempDir dir("defaults");
  vpc::ExperimentConfig cfg = tiny("binary", dir.str());
  cfg.seeds.clear();
  vpc::ExperimentResult r = vpc::run_experiment(cfg);
  CHECK(r.runs.size() == 3);  // binary defaults to seeds 1, 2, 3
}
