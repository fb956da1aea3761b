#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vpc/datagen.hpp"
#include "vpc/training.hpp"

namespace vpc {

// Fully resolved run request. `circuit` is a builtin name or textual layer
// list; empty means the experiment's default topology.
struct ExperimentConfig {
  std::string name;  // binary | multiclass | deep_ablation | benchmark
  GenSpec gen;
  SplitSpec split;
  TrainConfig train;
  std::string circuit;
  std::vector<std::uint64_t> seeds;  // empty = experiment default
  std::string out_dir = "runs";
};

// One trained run's headline numbers, as used by summaries and benchmarks.
struct RunOutcome {
  std::string model;  // arm label: a builtin circuit name or "mlp"
  std::uint64_t seed = 0;
  double test_accuracy = 0.0;
  double val_accuracy = 0.0;
  double initial_train_loss = 0.0;
  double final_train_loss = 0.0;
  int param_count = 0;
  std::string dataset_hash;
  double wall_seconds = 0.0;
};

struct ExperimentResult {
  std::vector<RunOutcome> runs;            // primary arm
  std::vector<RunOutcome> secondary_runs;  // ablation's no-normalize arm,
                                           // or the benchmark's deep stack
  std::vector<RunOutcome> mlp_runs;        // benchmark only
};

// Builtin defaults for a named experiment (class count, loss, optimizer,
// seeds, topology). Callers layer file and flag overrides on top.
ExperimentConfig default_experiment_config(const std::string& name);

// Execute an experiment end to end: generate, split, encode, train per seed,
// evaluate, and write per-run report/loss/confusion files plus a summary into
// out_dir. The resolved configuration is echoed to <name>_config.json before
// any computation. Files depend only on the configuration and seeds.
ExperimentResult run_experiment(const ExperimentConfig& config);

double median(std::vector<double> v);

}  // namespace vpc
