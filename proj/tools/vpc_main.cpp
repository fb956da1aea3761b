// vpc: phase-native circuit trainer for synthetic multichannel snapshots.
//
// Subcommands: generate | train | evaluate | gradcheck | benchmark.
// Config precedence: built-in defaults < --config file (key=value lines
// mirroring the long flag names) < explicit flags. Every command echoes its
// resolved configuration into the output directory before computing.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 I/O error,
// 4 training divergence, 5 tolerance failure, 1 other runtime failure.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vpc/autodiff.hpp"
#include "vpc/circuit.hpp"
#include "vpc/datagen.hpp"
#include "vpc/encoding.hpp"
#include "vpc/errors.hpp"
#include "vpc/experiments.hpp"
#include "vpc/readout.hpp"
#include "vpc/rng.hpp"
#include "vpc/serialize.hpp"
#include "vpc/training.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw vpc::io_error("cannot create output directory: " + dir);
}

// Flags shared by every data-producing command.
struct GenFlags {
  vpc::GenSpec gen;

  void attach(CLI::App* cmd) {
    cmd->add_option("--channels", gen.n_channels, "Channel count")
        ->capture_default_str();
    cmd->add_option("--classes", gen.n_classes, "Class count (2 or 4)")
        ->capture_default_str();
    cmd->add_option("--samples", gen.samples_per_class, "Samples per class")
        ->capture_default_str();
    cmd->add_option("--noise", gen.noise_sigma, "Noise standard deviation")
        ->capture_default_str();
    cmd->add_option("--amplitude", gen.amplitude, "Template amplitude")
        ->capture_default_str();
  }
};

struct TrainFlags {
  vpc::TrainConfig train;
  std::string optimizer = "adam";
  std::string loss;  // empty = experiment default

  void attach(CLI::App* cmd) {
    cmd->add_option("--epochs", train.epochs, "Training epochs")
        ->capture_default_str();
    cmd->add_option("--lr", train.learning_rate, "Adam learning rate")
        ->capture_default_str();
    cmd->add_option("--batch", train.batch,
                    "Mini-batch size (0 = full batch)")
        ->capture_default_str();
    cmd->add_option("--optimizer", optimizer,
                    "Optimizer: adam | derivative_free")
        ->capture_default_str();
    cmd->add_option("--loss", loss, "Loss: mse | cross_entropy");
  }

  void resolve() {
    if (optimizer == "adam") {
      train.optimizer = vpc::OptimizerKind::adam;
    } else if (optimizer == "derivative_free") {
      train.optimizer = vpc::OptimizerKind::derivative_free;
    } else {
      throw vpc::config_error("unknown optimizer: " + optimizer);
    }
    if (loss == "mse") {
      train.loss = vpc::LossKind::mse;
    } else if (loss == "cross_entropy") {
      train.loss = vpc::LossKind::cross_entropy;
    } else if (!loss.empty()) {
      throw vpc::config_error("unknown loss: " + loss);
    }
  }
};

// --config files are applied by expand_config_argv before the parser runs;
// the option itself is registered so it shows in help and parses cleanly.
void add_config_file(CLI::App* cmd, std::string& path) {
  cmd->add_option("--config", path,
                  "Config file: key=value lines mirroring the flag names");
}

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Flat key=value file: blank lines and '#' comment lines are skipped, later
// duplicates win, values may carry one layer of quotes.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  const std::string text = vpc::read_text_file(path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::size_t start = 0;
  int line_no = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty()) {
      throw vpc::config_error(path + ":" + std::to_string(line_no) +
                              ": expected key=value, got '" + line + "'");
    }
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                              (value.front() == '\'' && value.back() == '\''))) {
      value = value.substr(1, value.size() - 2);
    }
    bool replaced = false;
    for (auto& e : entries) {
      if (e.first == key) {
        e.second = value;
        replaced = true;
        break;
      }
    }
    if (!replaced) entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

// Splice config-file entries into argv as --key=value tokens so the normal
// flag machinery applies them. Keys the user passed explicitly are skipped,
// which keeps the precedence: built-in defaults < config file < flags.
std::vector<std::string> expand_config_argv(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  bool help = false;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--help" || args[i] == "-h") help = true;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty() || help) return args;
  for (const auto& [key, value] : read_config_file(path)) {
    const std::string flag = "--" + key;
    bool given = false;
    for (std::size_t i = 1; i < args.size() && !given; ++i) {
      given = args[i] == flag || args[i].rfind(flag + "=", 0) == 0;
    }
    if (!given) args.push_back(flag + "=" + value);
  }
  return args;
}

// --- generate --------------------------------------------------------------

struct GenerateArgs {
  GenFlags gen;
  std::string out = "runs";
};

int cmd_generate(const GenerateArgs& args) {
  ensure_dir(args.out);
  // The generator sidecar doubles as the resolved-config echo.
  vpc::write_genspec_json(args.gen.gen, join(args.out, "genspec.json"));
  vpc::Dataset data = vpc::generate(args.gen.gen);
  vpc::write_csv(data, join(args.out, "dataset.csv"));
  std::printf("dataset_hash %s\n", vpc::dataset_hash(data).c_str());
  std::printf("rows %zu  channels %d\n", data.snapshots.size(),
              data.n_channels);
  return 0;
}

// --- train -------------------------------------------------------------

struct TrainArgs {
  std::string experiment = "binary";
  GenFlags gen;
  TrainFlags train;
  std::string circuit;
  std::string data_file;
  std::string out = "runs";
  std::uint64_t seed = 0;  // 0 = experiment's default seed list
  int n_seeds = 0;
  bool gen_flags_seen = false;
  bool classes_seen = false;
  bool loss_seen = false;
};

// Train on a dataset loaded from disk: one run, no generation.
int train_from_file(const TrainArgs& args) {
  vpc::Dataset data = vpc::read_csv(args.data_file);
  const std::string hash = vpc::dataset_hash(data);
  const std::uint64_t seed = args.seed == 0 ? 1 : args.seed;

  vpc::SplitSpec split;
  split.seed = seed;
  vpc::TrainConfig tc = args.train.train;
  tc.seed = seed;

  int n_classes = 0;
  for (const vpc::Snapshot& s : data.snapshots) {
    n_classes = std::max(n_classes, s.label + 1);
  }
  if (args.train.loss.empty()) {
    tc.loss = n_classes > 2 ? vpc::LossKind::cross_entropy
                            : vpc::LossKind::mse;
  }

  const std::string circ_name =
      args.circuit.empty() ? "single-stack" : args.circuit;
  vpc::CircuitSpec circuit =
      vpc::circuit_from_name(circ_name, data.n_channels);

  ensure_dir(args.out);
  {
    json j;
    j["experiment"] = "train_file";
    j["data_file"] = args.data_file;
    j["dataset_hash"] = hash;
    j["circuit"] = circuit.to_text();
    j["seed"] = seed;
    j["train"] = json{{"epochs", tc.epochs},
                      {"learning_rate", tc.learning_rate},
                      {"batch", tc.batch},
                      {"optimizer", args.train.optimizer},
                      {"loss", tc.loss == vpc::LossKind::mse
                                   ? "mse"
                                   : "cross_entropy"}};
    vpc::write_text_file(join(args.out, "train_config.json"), j.dump(2) + "\n");
  }

  vpc::SplitResult sets = vpc::stratified_split(data, split);
  vpc::EncodedSet train = vpc::encode_all(sets.train);
  vpc::EncodedSet val = vpc::encode_all(sets.val);
  vpc::EncodedSet test = vpc::encode_all(sets.test);

  vpc::TrainReport report =
      tc.optimizer == vpc::OptimizerKind::adam
          ? vpc::adam_fit(circuit, tc, train, val)
          : vpc::derivative_free_fit(circuit, tc, train, val);
  vpc::EvalResult tr = vpc::evaluate(circuit, report.final_params, test, tc.loss);
  report.test_accuracy = tr.accuracy;
  report.test_confusion = tr.cm;
  report.test_mean_loss = tr.mean_loss;

  vpc::GenSpec gen;  // placeholder: the data came from disk
  gen.n_channels = data.n_channels;
  gen.n_classes = n_classes;
  const std::string stem = "train_seed" + std::to_string(seed);
  vpc::write_text_file(join(args.out, stem + "_report.json"),
                       vpc::report_json("train_file", seed, gen, split, tc,
                                        circuit.to_text(), hash, report));
  vpc::write_text_file(join(args.out, stem + "_loss.csv"),
                       vpc::loss_curve_csv(report.train_loss, report.val_loss));
  vpc::write_text_file(join(args.out, stem + "_confusion.csv"),
                       vpc::confusion_csv(report.test_confusion));
  std::printf("val_acc %.4f  test_acc %.4f  loss %.6f -> %.6f  params %d\n",
              report.val_accuracy, report.test_accuracy,
              report.initial_train_loss,
              report.train_loss.empty() ? report.initial_train_loss
                                        : report.train_loss.back(),
              report.param_count);
  return 0;
}

int cmd_train(const TrainArgs& args) {
  if (!args.data_file.empty()) return train_from_file(args);

  vpc::ExperimentConfig cfg = vpc::default_experiment_config(args.experiment);
  if (args.gen_flags_seen) {
    vpc::GenSpec g = args.gen.gen;
    if (!args.classes_seen) g.n_classes = cfg.gen.n_classes;
    cfg.gen = g;
  }
  vpc::TrainConfig tc = args.train.train;
  if (!args.loss_seen) tc.loss = cfg.train.loss;
  cfg.train = tc;
  cfg.circuit = args.circuit;
  cfg.out_dir = args.out;
  if (args.seed != 0) cfg.seeds = {args.seed};
  if (args.n_seeds > 0) {
    cfg.seeds.clear();
    for (int s = 1; s <= args.n_seeds; ++s) cfg.seeds.push_back(s);
  }

  vpc::run_experiment(cfg);
  return 0;
}

// --- evaluate ----------------------------------------------------------

struct EvaluateArgs {
  std::string report_file;
  std::string data_file;
  GenFlags gen;
  std::string subset = "test";
  std::string out = "runs";
  std::uint64_t seed = 0;  // 0 = seed recorded in the report
  bool gen_flags_seen = false;
};

int cmd_evaluate(const EvaluateArgs& args) {
  json report;
  try {
    report = json::parse(vpc::read_text_file(args.report_file));
  } catch (const json::exception& e) {
    throw vpc::io_error("bad report json: " + std::string(e.what()));
  }
  if (!report.contains("final_params") || !report.contains("circuit")) {
    throw vpc::config_error(
        "report file lacks final_params/circuit; cannot evaluate");
  }
  const std::vector<double> params =
      report["final_params"].get<std::vector<double>>();
  const std::string circuit_text = report["circuit"];
  vpc::CircuitSpec circuit = vpc::CircuitSpec::parse(circuit_text);
  const std::string loss_name = report["train"]["loss"];
  const vpc::LossKind task = loss_name == "mse"
                                 ? vpc::LossKind::mse
                                 : vpc::LossKind::cross_entropy;

  std::uint64_t seed = args.seed;
  if (seed == 0) seed = report["seed"].get<std::uint64_t>();

  if (args.subset != "train" && args.subset != "val" && args.subset != "test") {
    throw vpc::config_error("unknown subset: " + args.subset);
  }

  std::string source;
  vpc::GenSpec gen_resolved;
  bool use_file = !args.data_file.empty();
  if (use_file) {
    source = args.data_file;
  } else if (args.gen_flags_seen || !report.contains("generator")) {
    gen_resolved = args.gen.gen;
    gen_resolved.seed = seed;
    source = "generated";
  } else {
    const json& jg = report["generator"];
    gen_resolved.n_channels = jg["n_channels"];
    gen_resolved.n_classes = jg["n_classes"];
    gen_resolved.samples_per_class = jg["samples_per_class"];
    gen_resolved.noise_sigma = jg["noise_sigma"];
    gen_resolved.amplitude = jg["amplitude"];
    gen_resolved.seed = seed;
    source = "regenerated from report";
  }

  ensure_dir(args.out);
  {
    json j;
    j["experiment"] = "evaluate";
    j["report_file"] = args.report_file;
    j["data_source"] = source;
    j["subset"] = args.subset;
    j["seed"] = seed;
    j["circuit"] = circuit_text;
    j["loss"] = loss_name;
    vpc::write_text_file(join(args.out, "evaluate_config.json"),
                         j.dump(2) + "\n");
  }

  vpc::Dataset data =
      use_file ? vpc::read_csv(args.data_file) : vpc::generate(gen_resolved);

  vpc::SplitSpec split;
  split.seed = seed;
  vpc::SplitResult sets = vpc::stratified_split(data, split);
  const vpc::Dataset* chosen = &sets.test;
  if (args.subset == "train") {
    chosen = &sets.train;
  } else if (args.subset == "val") {
    chosen = &sets.val;
  }

  vpc::EncodedSet encoded = vpc::encode_all(*chosen);
  vpc::EvalResult r = vpc::evaluate(circuit, params, encoded, task);

  json j;
  j["accuracy"] = r.accuracy;
  j["mean_loss"] = r.mean_loss;
  j["degenerate_count"] = r.degenerate_count;
  j["n_samples"] = encoded.size();
  json rows = json::array();
  for (int a = 0; a < r.cm.k_classes; ++a) {
    json row = json::array();
    for (int b = 0; b < r.cm.k_classes; ++b) row.push_back(r.cm.at(a, b));
    rows.push_back(row);
  }
  j["confusion"] = rows;
  vpc::write_text_file(join(args.out, "evaluation.json"), j.dump(2) + "\n");
  vpc::write_text_file(join(args.out, "evaluation_confusion.csv"),
                       vpc::confusion_csv(r.cm));

  std::printf("accuracy %.4f  mean_loss %.6f  samples %d  degenerate %d\n",
              r.accuracy, r.mean_loss, encoded.size(), r.degenerate_count);
  return 0;
}

// --- gradcheck ---------------------------------------------------------

struct GradcheckArgs {
  std::string circuit = "single-stack";
  int channels = 8;
  std::string task = "multiclass";
  std::uint64_t seed = 1;
  double tol = 1e-5;
  double fd_step = 1e-5;
  std::string out = "runs";
};

int cmd_gradcheck(const GradcheckArgs& args) {
  vpc::CircuitSpec circuit = vpc::circuit_from_name(args.circuit, args.channels);

  ensure_dir(args.out);
  {
    json j;
    j["experiment"] = "gradcheck";
    j["circuit"] = circuit.to_text();
    j["task"] = args.task;
    j["seed"] = args.seed;
    j["tol"] = args.tol;
    j["fd_step"] = args.fd_step;
    vpc::write_text_file(join(args.out, "gradcheck_config.json"),
                         j.dump(2) + "\n");
  }

  vpc::SplitMix64 rng(vpc::derive_seed(args.seed, 0x47434B, 0));
  std::vector<double> params(circuit.param_count());
  for (double& p : params) p = rng.uniform(-3.0, 3.0);
  std::vector<double> phases(circuit.n_threads);
  for (double& phi : phases) phi = rng.uniform(-3.0, 3.0);
  vpc::PhasorState input = vpc::state_from_phases(phases);

  vpc::ScalarLoss loss;
  if (args.task == "binary") {
    loss = vpc::make_binary_mse(1);
  } else if (args.task == "multiclass") {
    const int k = std::min(4, circuit.n_threads);
    loss = vpc::make_multiclass_ce(1 % k, k);
  } else {
    throw vpc::config_error("unknown task: " + args.task);
  }

  vpc::GradReport r =
      vpc::grad_check(circuit, params, input, loss, args.fd_step);

  json j;
  j["max_rel_err"] = r.max_rel_err;
  j["analytic"] = r.analytic;
  j["finite_difference"] = r.fd;
  j["tol"] = args.tol;
  vpc::write_text_file(join(args.out, "gradcheck.json"), j.dump(2) + "\n");

  std::printf("max_rel_err %.3e  (tol %.3e, %d params)\n", r.max_rel_err,
              args.tol, circuit.param_count());
  if (r.max_rel_err > args.tol) {
    throw vpc::tolerance_error("gradient mismatch " +
                               vpc::format_double(r.max_rel_err) +
                               " exceeds tolerance " +
                               vpc::format_double(args.tol));
  }
  return 0;
}

// --- benchmark ---------------------------------------------------------

struct BenchmarkArgs {
  GenFlags gen;
  TrainFlags train;
  std::string out = "runs";
  int n_seeds = 1;
  bool gen_flags_seen = false;
  bool loss_seen = false;
};

int cmd_benchmark(const BenchmarkArgs& args) {
  vpc::ExperimentConfig cfg = vpc::default_experiment_config("benchmark");
  if (args.gen_flags_seen) {
    vpc::GenSpec g = args.gen.gen;
    g.n_classes = cfg.gen.n_classes;  // the comparison table is four-class
    cfg.gen = g;
  }
  vpc::TrainConfig tc = args.train.train;
  if (!args.loss_seen) tc.loss = cfg.train.loss;
  cfg.train = tc;
  cfg.out_dir = args.out;
  cfg.seeds.clear();
  for (int s = 1; s <= std::max(1, args.n_seeds); ++s) cfg.seeds.push_back(s);

  vpc::run_experiment(cfg);
  const std::string table = vpc::read_text_file(join(args.out, "benchmark.txt"));
  std::fputs(table.c_str(), stdout);
  return 0;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const vpc::divergence_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const vpc::tolerance_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const vpc::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const vpc::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const vpc::invalid_split_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const vpc::constant_snapshot_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-native circuit trainer"};
  app.require_subcommand(1);
  std::string config_path;  // shared echo slot; only one subcommand parses

  GenerateArgs gen_args;
  CLI::App* gen_cmd =
      app.add_subcommand("generate", "Write a synthetic dataset CSV");
  gen_args.gen.attach(gen_cmd);
  gen_cmd->add_option("--seed", gen_args.gen.gen.seed, "Generator seed")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen_args.out, "Output directory")
      ->capture_default_str();
  add_config_file(gen_cmd, config_path);

  TrainArgs train_args;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Run a training experiment");
  train_cmd->add_option("--experiment", train_args.experiment,
                        "binary | multiclass | deep_ablation | benchmark")
      ->capture_default_str();
  train_args.gen.attach(train_cmd);
  train_args.train.attach(train_cmd);
  train_cmd->add_option("--circuit", train_args.circuit,
                        "Builtin name or textual layer list");
  train_cmd->add_option("--data", train_args.data_file,
                        "Train on an existing dataset CSV");
  train_cmd->add_option("--seed", train_args.seed,
                        "Single run seed (default: experiment seed list)");
  train_cmd->add_option("--seeds", train_args.n_seeds, "Run seeds 1..N");
  train_cmd->add_option("--out", train_args.out, "Output directory")
      ->capture_default_str();
  add_config_file(train_cmd, config_path);

  EvaluateArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "Evaluate a trained report on a dataset split");
  eval_cmd->add_option("--report", eval_args.report_file, "Report JSON path")
      ->required();
  eval_cmd->add_option("--data", eval_args.data_file, "Dataset CSV path");
  eval_args.gen.attach(eval_cmd);
  eval_cmd->add_option("--subset", eval_args.subset, "train | val | test")
      ->capture_default_str();
  eval_cmd->add_option("--seed", eval_args.seed,
                       "Generation/split seed (default: from report)");
  eval_cmd->add_option("--out", eval_args.out, "Output directory")
      ->capture_default_str();
  add_config_file(eval_cmd, config_path);

  GradcheckArgs grad_args;
  CLI::App* grad_cmd = app.add_subcommand(
      "gradcheck", "Compare analytic and finite-difference gradients");
  grad_cmd->add_option("--circuit", grad_args.circuit,
                       "Builtin name or textual layer list")
      ->capture_default_str();
  grad_cmd->add_option("--channels", grad_args.channels, "Thread count")
      ->capture_default_str();
  grad_cmd->add_option("--task", grad_args.task, "binary | multiclass")
      ->capture_default_str();
  grad_cmd->add_option("--seed", grad_args.seed, "Sampling seed")
      ->capture_default_str();
  grad_cmd->add_option("--tol", grad_args.tol, "Failure threshold")
      ->capture_default_str();
  grad_cmd->add_option("--fd-step", grad_args.fd_step,
                       "Finite-difference step")
      ->capture_default_str();
  grad_cmd->add_option("--out", grad_args.out, "Output directory")
      ->capture_default_str();
  add_config_file(grad_cmd, config_path);

  BenchmarkArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand(
      "benchmark", "Compare circuit variants against the feature baseline");
  bench_args.gen.attach(bench_cmd);
  bench_args.train.attach(bench_cmd);
  bench_cmd->add_option("--seeds", bench_args.n_seeds,
                        "Aggregate over seeds 1..N")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "Output directory")
      ->capture_default_str();
  add_config_file(bench_cmd, config_path);

  std::vector<std::string> args;
  {
    const int rc = guarded([&] {
      args = expand_config_argv(argc, argv);
      return 0;
    });
    if (rc != 0) return rc;
  }

  try {
    std::vector<const char*> argv2;
    argv2.reserve(args.size());
    for (const std::string& a : args) argv2.push_back(a.c_str());
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // Help and version requests exit 0; anything else is a config error.
    return code == 0 ? 0 : 2;
  }

  auto seen = [](CLI::App* cmd, std::initializer_list<const char*> names) {
    for (const char* n : names) {
      if (cmd->count(n) > 0) return true;
    }
    return false;
  };

  if (gen_cmd->parsed()) {
    return guarded([&] { return cmd_generate(gen_args); });
  }
  if (train_cmd->parsed()) {
    train_args.gen_flags_seen =
        seen(train_cmd,
             {"--channels", "--classes", "--samples", "--noise", "--amplitude"});
    train_args.classes_seen = seen(train_cmd, {"--classes"});
    train_args.loss_seen = seen(train_cmd, {"--loss"});
    return guarded([&] {
      train_args.train.resolve();
      return cmd_train(train_args);
    });
  }
  if (eval_cmd->parsed()) {
    eval_args.gen_flags_seen =
        seen(eval_cmd,
             {"--channels", "--classes", "--samples", "--noise", "--amplitude"});
    return guarded([&] { return cmd_evaluate(eval_args); });
  }
  if (grad_cmd->parsed()) {
    return guarded([&] { return cmd_gradcheck(grad_args); });
  }
  if (bench_cmd->parsed()) {
    bench_args.gen_flags_seen =
        seen(bench_cmd,
             {"--channels", "--classes", "--samples", "--noise", "--amplitude"});
    bench_args.loss_seen = seen(bench_cmd, {"--loss"});
    return guarded([&] {
      bench_args.train.resolve();
      return cmd_benchmark(bench_args);
    });
  }
  return 2;
}
