#include "vpc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>

#include "vpc/circuit.hpp"
#include "vpc/errors.hpp"
#include "vpc/serialize.hpp"

#include <json.hpp>

namespace vpc {

double median(std::vector<double> v) {
  if (v.empty()) throw invalid_input_error("median of empty vector");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

ExperimentConfig default_experiment_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  if (name == "binary") {
    cfg.gen.n_classes = 2;
    cfg.train.loss = LossKind::mse;
    cfg.seeds = {1, 2, 3};
  } else if (name == "multiclass") {
    cfg.gen.n_classes = 4;
    cfg.train.loss = LossKind::cross_entropy;
    cfg.seeds = {1, 2, 3};
  } else if (name == "deep_ablation") {
    cfg.gen.n_classes = 4;
    cfg.train.loss = LossKind::cross_entropy;
    cfg.seeds = {1, 2, 3, 4, 5};
  } else if (name == "benchmark") {
    cfg.gen.n_classes = 4;
    cfg.train.loss = LossKind::cross_entropy;
    cfg.seeds = {1};
  } else {
    throw config_error("unknown experiment: " + name);
  }
  return cfg;
}

namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

nlohmann::json gen_json(const GenSpec& g) {
  nlohmann::json j;
  j["amplitude"] = g.amplitude;
  j["n_channels"] = g.n_channels;
  j["n_classes"] = g.n_classes;
  j["noise_sigma"] = g.noise_sigma;
  j["samples_per_class"] = g.samples_per_class;
  j["seed"] = g.seed;
  return j;
}

nlohmann::json split_json(const SplitSpec& s) {
  nlohmann::json j;
  j["train_frac"] = s.train_frac;
  j["val_frac"] = s.val_frac;
  j["test_frac"] = s.test_frac;
  j["seed"] = s.seed;
  return j;
}

nlohmann::json train_json(const TrainConfig& t) {
  nlohmann::json j;
  j["epochs"] = t.epochs;
  j["learning_rate"] = t.learning_rate;
  j["batch"] = t.batch;
  j["optimizer"] =
      t.optimizer == OptimizerKind::adam ? "adam" : "derivative_free";
  j["loss"] = t.loss == LossKind::mse ? "mse" : "cross_entropy";
  j["seed"] = t.seed;
  return j;
}

// One arm of one seeded run, plus everything needed to serialize it.
struct ArmPlan {
  std::string tag;       // "" for the experiment's single arm
  std::string model;     // builtin circuit name, textual form, or "mlp"
  CircuitSpec circuit;   // unused when model == "mlp"
  bool is_mlp = false;
};

std::string file_stem(const std::string& name, const ArmPlan& arm,
                      std::uint64_t seed) {
  std::string stem = name;
  if (!arm.tag.empty()) stem += "_" + arm.tag;
  stem += "_seed" + std::to_string(seed);
  return stem;
}

RunOutcome execute_arm(const ExperimentConfig& cfg, const ArmPlan& arm,
                       std::uint64_t seed, const GenSpec& gen,
                       const SplitSpec& split, const TrainConfig& tc,
                       const std::string& hash, const EncodedSet& train,
                       const EncodedSet& val, const EncodedSet& test) {
  const auto t0 = std::chrono::steady_clock::now();

  TrainReport report;
  std::string circuit_text;
  if (arm.is_mlp) {
    MlpSpec mlp;
    mlp.input_dim = gen.n_channels;
    mlp.hidden_dim = 64;
    mlp.output_dim = gen.n_classes;
    TrainConfig mlp_cfg = tc;
    mlp_cfg.loss = LossKind::cross_entropy;
    report = mlp_fit(mlp, mlp_cfg, train, val);
    EvalResult tr = mlp_evaluate(mlp, report.final_params, test);
    report.test_accuracy = tr.accuracy;
    report.test_confusion = tr.cm;
    report.test_mean_loss = tr.mean_loss;
    circuit_text = "mlp hidden=" + std::to_string(mlp.hidden_dim);
  } else {
    if (tc.optimizer == OptimizerKind::adam) {
      report = adam_fit(arm.circuit, tc, train, val);
    } else {
      report = derivative_free_fit(arm.circuit, tc, train, val);
    }
    EvalResult tr = evaluate(arm.circuit, report.final_params, test, tc.loss);
    report.test_accuracy = tr.accuracy;
    report.test_confusion = tr.cm;
    report.test_mean_loss = tr.mean_loss;
    circuit_text = arm.circuit.to_text();
  }

  const auto t1 = std::chrono::steady_clock::now();
  report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

  const std::string stem = file_stem(cfg.name, arm, seed);
  write_text_file(join(cfg.out_dir, stem + "_report.json"),
                  report_json(cfg.name, seed, gen, split, tc, circuit_text,
                              hash, report));
  write_text_file(join(cfg.out_dir, stem + "_loss.csv"),
                  loss_curve_csv(report.train_loss, report.val_loss));
  write_text_file(join(cfg.out_dir, stem + "_confusion.csv"),
                  confusion_csv(report.test_confusion));

  RunOutcome out;
  out.model = arm.model;
  out.seed = seed;
  out.val_accuracy = report.val_accuracy;
  out.test_accuracy = report.test_accuracy;
  out.initial_train_loss = report.initial_train_loss;
  out.final_train_loss =
      report.train_loss.empty() ? report.initial_train_loss
                                : report.train_loss.back();
  out.param_count = report.param_count;
  out.dataset_hash = hash;
  out.wall_seconds = report.wall_seconds;

  std::printf("[%s] %s seed %llu  val_acc %.3f  test_acc %.3f  "
              "loss %.4f -> %.4f  (%.1fs)\n",
              cfg.name.c_str(), arm.model.c_str(),
              static_cast<unsigned long long>(seed), out.val_accuracy,
              out.test_accuracy, out.initial_train_loss,
              out.final_train_loss, out.wall_seconds);
  std::fflush(stdout);
  return out;
}

nlohmann::json arm_summary(const std::vector<RunOutcome>& runs) {
  nlohmann::json j;
  std::vector<double> val, test, init, fin;
  nlohmann::json rows = nlohmann::json::array();
  for (const RunOutcome& r : runs) {
    val.push_back(r.val_accuracy);
    test.push_back(r.test_accuracy);
    init.push_back(r.initial_train_loss);
    fin.push_back(r.final_train_loss);
    nlohmann::json row;
    row["seed"] = r.seed;
    row["val_accuracy"] = r.val_accuracy;
    row["test_accuracy"] = r.test_accuracy;
    row["initial_train_loss"] = r.initial_train_loss;
    row["final_train_loss"] = r.final_train_loss;
    row["dataset_hash"] = r.dataset_hash;
    rows.push_back(row);
  }
  j["param_count"] = runs.empty() ? 0 : runs.front().param_count;
  j["median_val_accuracy"] = median(val);
  j["median_test_accuracy"] = median(test);
  j["median_initial_train_loss"] = median(init);
  j["median_final_train_loss"] = median(fin);
  j["runs"] = rows;
  return j;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config_in) {
  ExperimentConfig config = config_in;
  const std::string& name = config.name;
  const bool fixed_arms = name == "deep_ablation" || name == "benchmark";
  if (name != "binary" && name != "multiclass" && !fixed_arms) {
    throw config_error("unknown experiment: " + name);
  }
  if (config.seeds.empty()) config.seeds = default_experiment_config(name).seeds;
  if (fixed_arms && !config.circuit.empty()) {
    throw config_error(name + " runs a fixed set of topologies; "
                              "the circuit cannot be overridden");
  }

  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw io_error("cannot create output directory: " + config.out_dir);

  // Arm list per experiment.
  std::vector<ArmPlan> arms;
  const int n = config.gen.n_channels;
  if (name == "deep_ablation") {
    arms.push_back({"deep_stack", "deep-stack", CircuitSpec::deep_stack(n)});
    arms.push_back(
        {"deep_circuit", "deep-circuit", CircuitSpec::deep_circuit(n)});
  } else if (name == "benchmark") {
    arms.push_back(
        {"single_stack", "single-stack", CircuitSpec::single_stack(n)});
    arms.push_back({"deep_stack", "deep-stack", CircuitSpec::deep_stack(n)});
    ArmPlan mlp{"mlp", "mlp", CircuitSpec{}, true};
    arms.push_back(mlp);
  } else {
    const std::string circ =
        config.circuit.empty() ? "single-stack" : config.circuit;
    arms.push_back({"", circ, circuit_from_name(circ, n)});
  }

  // Echo the resolved configuration before any computation.
  {
    nlohmann::json j;
    j["experiment"] = name;
    j["generator"] = gen_json(config.gen);
    j["split"] = split_json(config.split);
    j["train"] = train_json(config.train);
    j["seeds"] = config.seeds;
    j["out_dir"] = config.out_dir;
    nlohmann::json jarms = nlohmann::json::array();
    for (const ArmPlan& a : arms) {
      nlohmann::json ja;
      ja["model"] = a.model;
      ja["layers"] = a.is_mlp ? "mlp hidden=64" : a.circuit.to_text();
      jarms.push_back(ja);
    }
    j["arms"] = jarms;
    write_text_file(join(config.out_dir, name + "_config.json"),
                    j.dump(2) + "\n");
  }

  ExperimentResult result;
  for (std::uint64_t seed : config.seeds) {
    GenSpec gen = config.gen;
    SplitSpec split = config.split;
    TrainConfig tc = config.train;
    gen.seed = seed;
    split.seed = seed;
    tc.seed = seed;

    const Dataset data = generate(gen);
    const std::string hash = dataset_hash(data);
    const SplitResult sets = stratified_split(data, split);
    const EncodedSet train = encode_all(sets.train);
    const EncodedSet val = encode_all(sets.val);
    const EncodedSet test = encode_all(sets.test);

    for (std::size_t a = 0; a < arms.size(); ++a) {
      RunOutcome out = execute_arm(config, arms[a], seed, gen, split, tc,
                                   hash, train, val, test);
      if (a == 0) {
        result.runs.push_back(out);
      } else if (arms[a].is_mlp) {
        result.mlp_runs.push_back(out);
      } else {
        result.secondary_runs.push_back(out);
      }
    }
  }

  // Summary over seeds, one block per arm.
  {
    nlohmann::json j;
    j["experiment"] = name;
    nlohmann::json jarms;
    jarms[arms[0].model] = arm_summary(result.runs);
    if (!result.secondary_runs.empty()) {
      jarms[arms[1].model] = arm_summary(result.secondary_runs);
    }
    if (!result.mlp_runs.empty()) {
      jarms["mlp"] = arm_summary(result.mlp_runs);
    }
    j["arms"] = jarms;
    write_text_file(join(config.out_dir, name + "_summary.json"),
                    j.dump(2) + "\n");
  }

  if (name == "benchmark") {
    const std::vector<const std::vector<RunOutcome>*> rows = {
        &result.runs, &result.secondary_runs, &result.mlp_runs};
    std::string csv =
        "model,param_count,val_accuracy_mean,test_accuracy_mean,"
        "test_accuracy_min,test_accuracy_max,final_train_loss_mean\n";
    std::string txt = "model          params  val_acc  test_acc  train_loss\n";
    for (const auto* runs : rows) {
      std::vector<double> val, test, fin;
      for (const RunOutcome& r : *runs) {
        val.push_back(r.val_accuracy);
        test.push_back(r.test_accuracy);
        fin.push_back(r.final_train_loss);
      }
      const RunOutcome& first = runs->front();
      csv += first.model;
      csv += "," + std::to_string(first.param_count);
      csv += "," + format_double(mean_of(val));
      csv += "," + format_double(mean_of(test));
      csv += "," + format_double(*std::min_element(test.begin(), test.end()));
      csv += "," + format_double(*std::max_element(test.begin(), test.end()));
      csv += "," + format_double(mean_of(fin));
      csv += "\n";
      char line[128];
      std::snprintf(line, sizeof(line), "%-14s %6d   %5.3f    %5.3f     %7.4f\n",
                    first.model.c_str(), first.param_count, mean_of(val),
                    mean_of(test), mean_of(fin));
      txt += line;
    }
    write_text_file(join(config.out_dir, "benchmark.csv"), csv);
    write_text_file(join(config.out_dir, "benchmark.txt"), txt);
  }

  return result;
}

}  // namespace vpc
