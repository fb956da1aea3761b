#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vpc/circuit.hpp"
#include "vpc/datagen.hpp"
#include "vpc/readout.hpp"
#include "vpc/state.hpp"

namespace vpc {

enum class OptimizerKind { adam, derivative_free };
enum class LossKind { mse, cross_entropy };

struct TrainConfig {
  int epochs = 100;
  double learning_rate = 0.11;
  int batch = 0;  // 0 = full batch; otherwise contiguous slices in data order
  OptimizerKind optimizer = OptimizerKind::adam;
  std::uint64_t seed = 1;
  LossKind loss = LossKind::mse;
  bool kink_guard = true;  // count |phi| < 1e-6 readout events during training
};

struct TrainReport {
  std::vector<double> train_loss;  // after each epoch (or simplex iteration)
  std::vector<double> val_loss;
  double initial_train_loss = 0.0;  // before the first update
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;       // filled by the experiment layer
  ConfusionMatrix test_confusion;   // likewise
  double test_mean_loss = 0.0;      // likewise
  int param_count = 0;
  double wall_seconds = 0.0;  // printed, never serialized (reports stay byte-stable)
  std::string optimizer_name;
  std::vector<double> final_params;
  bool budget_exhausted = false;  // derivative-free only
  long long kink_events = 0;
  int epochs_run = 0;
};

// Dataset after phase encoding.  `phases` carries the same angles as flat
// real vectors for models that consume features instead of states.
struct EncodedSet {
  std::vector<PhasorState> states;
  std::vector<std::vector<double>> phases;
  std::vector<int> labels;

  int size() const { return static_cast<int>(labels.size()); }
};

EncodedSet encode_all(const Dataset& data);

// Uniform(-0.1, 0.1) angles from the run seed; the same stream feeds every
// optimizer so runs are comparable across methods.
std::vector<double> init_params(int count, std::uint64_t seed);

// Full-batch (or fixed contiguous mini-batch) Adam with bias correction;
// beta1 = 0.9, beta2 = 0.999, eps = 1e-8. Per-epoch gradients are averaged
// over samples in index order, so results are bit-deterministic. Throws
// divergence_error on a non-finite loss.
TrainReport adam_fit(const CircuitSpec& spec, const TrainConfig& config,
                     const EncodedSet& train, const EncodedSet& val);

// Nelder-Mead simplex with the adaptive coefficients of Gao & Han (an
// unconstrained trust-region-flavoured substitute for a linear-approximation
// constrained solver: the angular domain is unconstrained and periodic, so
// constraint handling buys nothing). Terminates when the simplex radius
// drops below 1e-6 or the evaluation budget (5000) is spent; the budget case
// returns best-so-far with budget_exhausted set.
TrainReport derivative_free_fit(const CircuitSpec& spec,
                                const TrainConfig& config,
                                const EncodedSet& train, const EncodedSet& val);

struct EvalResult {
  double accuracy = 0.0;
  ConfusionMatrix cm;
  double mean_loss = 0.0;
  int degenerate_count = 0;  // readout threads below the pull-back threshold
};

// Threshold 0.5 for the two-class readout (ties resolve to class 0), argmax
// for multiclass. Degenerate readout threads count as errors and are
// surfaced, not thrown.
EvalResult evaluate(const CircuitSpec& spec, const std::vector<double>& params,
                    const EncodedSet& data, LossKind task);

// Single hidden layer, tanh activation, softmax output; trained by the same
// Adam loop on the same encoded phase vectors.
struct MlpSpec {
  int input_dim = 32;
  int hidden_dim = 64;
  int output_dim = 4;

  int param_count() const {
    return input_dim * hidden_dim + hidden_dim +
           hidden_dim * output_dim + output_dim;
  }
};

TrainReport mlp_fit(const MlpSpec& mlp, const TrainConfig& config,
                    const EncodedSet& train, const EncodedSet& val);
EvalResult mlp_evaluate(const MlpSpec& mlp, const std::vector<double>& params,
                        const EncodedSet& data);

}  // namespace vpc
