#include "vpc/training.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "vpc/autodiff.hpp"
#include "vpc/encoding.hpp"
#include "vpc/errors.hpp"
#include "vpc/rng.hpp"

namespace vpc {

EncodedSet encode_all(const Dataset& data) {
  EncodedSet out;
  for (const Snapshot& s : data.snapshots) {
    std::vector<double> phi = phase_encode(zscore(s.values));
    out.states.push_back(state_from_phases(phi));
    out.phases.push_back(std::move(phi));
    out.labels.push_back(s.label);
  }
  return out;
}

// Stream tag separating parameter init from every other use of the run seed.
static constexpr std::uint64_t kInitTag = 0x494E4954ULL;

std::vector<double> init_params(int count, std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, kInitTag, 0));
  std::vector<double> p(count);
  for (double& v : p) v = rng.uniform(-0.1, 0.1);
  return p;
}

static int infer_classes(const EncodedSet& data) {
  int k = 0;
  for (int y : data.labels) k = std::max(k, y + 1);
  return std::max(k, 2);
}

static ScalarLoss sample_loss(LossKind task, int label, int k_classes) {
  if (task == LossKind::mse) return make_binary_mse(label);
  return make_multiclass_ce(label, k_classes);
}

// Mean loss over a set in index order; optionally counts near-kink readout
// phases (|phi| < 1e-6) as a training diagnostic.
static double set_mean_loss(const CircuitSpec& spec,
                            const std::vector<double>& params,
                            const EncodedSet& data, LossKind task,
                            int k_classes, long long* kinks) {
  double sum = 0.0;
  for (int i = 0; i < data.size(); ++i) {
    PhasorState out = forward(spec, params, data.states[i]);
    if (kinks && task == LossKind::cross_entropy) {
      for (int t = 0; t < k_classes; ++t) {
        if (std::abs(arg_principal(out.amps[t])) < 1e-6) ++*kinks;
      }
    }
    sum += sample_loss(task, data.labels[i], k_classes).value(out);
  }
  return sum / double(data.size());
}

static std::pair<double, std::vector<double>> batch_loss_grad(
    const CircuitSpec& spec, const std::vector<double>& params,
    const EncodedSet& data, int begin, int end, LossKind task,
    int k_classes) {
  std::vector<double> grad(params.size(), 0.0);
  double sum = 0.0;
  for (int i = begin; i < end; ++i) {
    auto [value, g] = loss_and_grad(
        spec, params, data.states[i],
        sample_loss(task, data.labels[i], k_classes));
    sum += value;
    for (std::size_t j = 0; j < g.size(); ++j) grad[j] += g[j];
  }
  const double inv = 1.0 / double(end - begin);
  sum *= inv;
  for (double& g : grad) g *= inv;
  return {sum, grad};
}

// Shared Adam loop. `batch_lg(p, begin, end)` returns the mean loss and
// gradient over train samples [begin, end); `mean_loss(p, on_train, kinks)`
// evaluates either set at fixed order.
static TrainReport adam_loop(
    int n_params, const TrainConfig& config, int n_train,
    const std::function<std::pair<double, std::vector<double>>(
        const std::vector<double>&, int, int)>& batch_lg,
    const std::function<double(const std::vector<double>&, bool,
                               long long*)>& mean_loss) {
  if (n_train < 1) throw invalid_input_error("empty training set");
  if (config.epochs < 1) throw config_error("epochs must be >= 1");
  if (!(config.learning_rate > 0.0)) {
    throw config_error("learning rate must be > 0");
  }

  TrainReport report;
  report.param_count = n_params;
  report.optimizer_name = "adam";

  std::vector<double> p = init_params(n_params, config.seed);
  std::vector<double> m(n_params, 0.0), v(n_params, 0.0);
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  report.initial_train_loss = mean_loss(p, true, nullptr);
  if (!std::isfinite(report.initial_train_loss)) throw divergence_error(0);

  long long* kinks = config.kink_guard ? &report.kink_events : nullptr;
  const int batch = config.batch <= 0 ? n_train : std::min(config.batch, n_train);
  long long t = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (int begin = 0; begin < n_train; begin += batch) {
      const int end = std::min(begin + batch, n_train);
      auto [value, g] = batch_lg(p, begin, end);
      if (!std::isfinite(value)) throw divergence_error(epoch);
      ++t;
      const double bc1 = 1.0 - std::pow(beta1, double(t));
      const double bc2 = 1.0 - std::pow(beta2, double(t));
      for (int j = 0; j < n_params; ++j) {
        m[j] = beta1 * m[j] + (1.0 - beta1) * g[j];
        v[j] = beta2 * v[j] + (1.0 - beta2) * g[j] * g[j];
        p[j] -= config.learning_rate * (m[j] / bc1) /
                (std::sqrt(v[j] / bc2) + eps);
      }
    }
    const double train_L = mean_loss(p, true, kinks);
    const double val_L = mean_loss(p, false, nullptr);
    if (!std::isfinite(train_L) || !std::isfinite(val_L)) {
      throw divergence_error(epoch);
    }
    report.train_loss.push_back(train_L);
    report.val_loss.push_back(val_L);
  }
  report.epochs_run = config.epochs;
  report.final_params = std::move(p);
  return report;
}

TrainReport adam_fit(const CircuitSpec& spec, const TrainConfig& config,
                     const EncodedSet& train, const EncodedSet& val) {
  const int k_classes = infer_classes(train);
  TrainReport report = adam_loop(
      spec.param_count(), config, train.size(),
      [&](const std::vector<double>& p, int begin, int end) {
        return batch_loss_grad(spec, p, train, begin, end, config.loss,
                               k_classes);
      },
      [&](const std::vector<double>& p, bool on_train, long long* kinks) {
        return set_mean_loss(spec, p, on_train ? train : val, config.loss,
                             k_classes, kinks);
      });
  EvalResult vr = evaluate(spec, report.final_params, val, config.loss);
  report.val_accuracy = vr.accuracy;
  return report;
}

TrainReport derivative_free_fit(const CircuitSpec& spec,
                                const TrainConfig& config,
                                const EncodedSet& train,
                                const EncodedSet& val) {
  const int n = spec.param_count();
  if (n > 256) {
    throw config_error(
        "derivative-free fit is limited to 256 parameters, got " +
        std::to_string(n));
  }
  if (n < 1) throw config_error("derivative-free fit needs parameters");
  if (train.size() < 1) throw invalid_input_error("empty training set");

  const int k_classes = infer_classes(train);
  const int kBudget = 5000;
  const double kRadiusTol = 1e-6;

  TrainReport report;
  report.param_count = n;
  report.optimizer_name = "nelder_mead";

  int evals = 0;
  auto objective = [&](const std::vector<double>& p) {
    ++evals;
    const double L = set_mean_loss(spec, p, train, config.loss, k_classes,
                                   nullptr);
    if (!std::isfinite(L)) throw divergence_error(evals);
    return L;
  };
  auto val_loss_of = [&](const std::vector<double>& p) {
    return set_mean_loss(spec, p, val, config.loss, k_classes, nullptr);
  };

  // Adaptive simplex coefficients (scale with dimension).
  const double alpha = 1.0;                       // reflection
  const double beta = 1.0 + 2.0 / n;              // expansion
  const double gamma = 0.75 - 1.0 / (2.0 * n);    // contraction
  const double delta = 1.0 - 1.0 / n;             // shrink

  std::vector<std::vector<double>> simplex;
  std::vector<double> fval;
  std::vector<double> p0 = init_params(n, config.seed);
  simplex.push_back(p0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> v = p0;
    v[i] += 0.05;
    simplex.push_back(std::move(v));
  }
  for (const auto& v : simplex) fval.push_back(objective(v));
  report.initial_train_loss = fval[0];

  auto order = [&]() {
    std::vector<int> idx(simplex.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return fval[a] < fval[b]; });
    std::vector<std::vector<double>> s2;
    std::vector<double> f2;
    for (int i : idx) {
      s2.push_back(simplex[i]);
      f2.push_back(fval[i]);
    }
    simplex.swap(s2);
    fval.swap(f2);
  };
  auto radius = [&]() {
    double r = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      double d2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double d = simplex[i][j] - simplex[0][j];
        d2 += d * d;
      }
      r = std::max(r, std::sqrt(d2));
    }
    return r;
  };

  order();
  int iterations = 0;
  while (true) {
    if (radius() < kRadiusTol) break;
    if (evals >= kBudget) {
      report.budget_exhausted = true;
      break;
    }

    // Centroid of all but the worst vertex.
    std::vector<double> c(n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) c[j] += simplex[i][j];
    }
    for (double& x : c) x /= double(n);
    const std::vector<double>& worst = simplex[n];

    auto blend = [&](double coef, const std::vector<double>& away) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j) x[j] = c[j] + coef * (c[j] - away[j]);
      return x;
    };

    std::vector<double> xr = blend(alpha, worst);
    const double fr = objective(xr);
    bool shrink = false;
    if (fr < fval[0]) {
      std::vector<double> xe(n);
      for (int j = 0; j < n; ++j) xe[j] = c[j] + beta * (xr[j] - c[j]);
      const double fe = objective(xe);
      if (fe < fr) {
        simplex[n] = std::move(xe);
        fval[n] = fe;
      } else {
        simplex[n] = std::move(xr);
        fval[n] = fr;
      }
    } else if (fr < fval[n - 1]) {
      simplex[n] = std::move(xr);
      fval[n] = fr;
    } else if (fr < fval[n]) {
      std::vector<double> xc(n);
      for (int j = 0; j < n; ++j) xc[j] = c[j] + gamma * (xr[j] - c[j]);
      const double fc = objective(xc);
      if (fc <= fr) {
        simplex[n] = std::move(xc);
        fval[n] = fc;
      } else {
        shrink = true;
      }
    } else {
      std::vector<double> xc(n);
      for (int j = 0; j < n; ++j) xc[j] = c[j] - gamma * (c[j] - worst[j]);
      const double fc = objective(xc);
      if (fc < fval[n]) {
        simplex[n] = std::move(xc);
        fval[n] = fc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t i = 1; i < simplex.size(); ++i) {
        if (evals >= kBudget) {
          // Out of budget: leave the remaining vertices (and their recorded
          // losses) where they are instead of moving them unevaluated.
          report.budget_exhausted = true;
          break;
        }
        std::vector<double> moved(n);
        for (int j = 0; j < n; ++j) {
          moved[j] = simplex[0][j] + delta * (simplex[i][j] - simplex[0][j]);
        }
        fval[i] = objective(moved);
        simplex[i] = std::move(moved);
      }
    }
    order();
    ++iterations;
    report.train_loss.push_back(fval[0]);
    report.val_loss.push_back(val_loss_of(simplex[0]));
    if (report.budget_exhausted) break;
  }

  report.epochs_run = iterations;
  report.final_params = simplex[0];
  EvalResult vr = evaluate(spec, report.final_params, val, config.loss);
  report.val_accuracy = vr.accuracy;
  return report;
}

EvalResult evaluate(const CircuitSpec& spec, const std::vector<double>& params,
                    const EncodedSet& data, LossKind task) {
  if (data.size() < 1) throw invalid_input_error("empty evaluation set");
  const int k_classes = infer_classes(data);

  std::vector<int> preds, labels;
  double loss_sum = 0.0;
  int correct = 0;
  EvalResult result;
  for (int i = 0; i < data.size(); ++i) {
    try {
      PhasorState out = forward(spec, params, data.states[i]);
      int pred;
      if (task == LossKind::mse) {
        const double p = binary_prob(out);
        pred = p > 0.5 ? 1 : 0;
        loss_sum += mse_loss(p, data.labels[i]);
      } else {
        const std::vector<double> probs =
            softmax(multiclass_logits(out, k_classes));
        pred = predict(probs);
        loss_sum += cross_entropy(probs, data.labels[i]);
      }
      preds.push_back(pred);
      labels.push_back(data.labels[i]);
      if (pred == data.labels[i]) ++correct;
    } catch (const degenerate_amplitude_error&) {
      // A collapsed readout thread: counted against accuracy, kept out of
      // the confusion matrix and the mean loss.
      result.degenerate_count += 1;
    }
  }
  result.accuracy = double(correct) / double(data.size());
  if (!preds.empty()) {
    result.cm = confusion(preds, labels, k_classes);
    result.mean_loss = loss_sum / double(preds.size());
  } else {
    result.cm.k_classes = k_classes;
    result.cm.counts.assign(std::size_t(k_classes) * k_classes, 0);
  }
  return result;
}

// --- feature-vector baseline ---------------------------------------------

namespace {

struct MlpForward {
  std::vector<double> hidden;  // post-tanh
  std::vector<double> probs;
};

MlpForward mlp_forward(const MlpSpec& mlp, const std::vector<double>& params,
                       const std::vector<double>& x) {
  const int in = mlp.input_dim, hid = mlp.hidden_dim, out = mlp.output_dim;
  const double* w1 = params.data();
  const double* b1 = w1 + std::size_t(in) * hid;
  const double* w2 = b1 + hid;
  const double* b2 = w2 + std::size_t(hid) * out;

  MlpForward f;
  f.hidden.resize(hid);
  for (int j = 0; j < hid; ++j) {
    double a = b1[j];
    for (int i = 0; i < in; ++i) a += x[i] * w1[std::size_t(i) * hid + j];
    f.hidden[j] = std::tanh(a);
  }
  std::vector<double> logits(out);
  for (int k = 0; k < out; ++k) {
    double a = b2[k];
    for (int j = 0; j < hid; ++j) a += f.hidden[j] * w2[std::size_t(j) * out + k];
    logits[k] = a;
  }
  f.probs = softmax(logits);
  return f;
}

}  // namespace

TrainReport mlp_fit(const MlpSpec& mlp, const TrainConfig& config,
                    const EncodedSet& train, const EncodedSet& val) {
  const int in = mlp.input_dim, hid = mlp.hidden_dim, out = mlp.output_dim;
  if (!train.phases.empty() &&
      static_cast<int>(train.phases[0].size()) != in) {
    throw dimension_error("feature width does not match the model input");
  }

  auto batch_lg = [&](const std::vector<double>& p, int begin, int end) {
    std::vector<double> grad(p.size(), 0.0);
    double sum = 0.0;
    double* gw1 = grad.data();
    double* gb1 = gw1 + std::size_t(in) * hid;
    double* gw2 = gb1 + hid;
    double* gb2 = gw2 + std::size_t(hid) * out;
    const double* w2 = p.data() + std::size_t(in) * hid + hid;
    for (int s = begin; s < end; ++s) {
      const std::vector<double>& x = train.phases[s];
      MlpForward f = mlp_forward(mlp, p, x);
      sum += cross_entropy(f.probs, train.labels[s]);
      std::vector<double> dlogit =
          cross_entropy_logit_grad(f.probs, train.labels[s]);
      for (int k = 0; k < out; ++k) gb2[k] += dlogit[k];
      for (int j = 0; j < hid; ++j) {
        double dh = 0.0;
        for (int k = 0; k < out; ++k) {
          gw2[std::size_t(j) * out + k] += f.hidden[j] * dlogit[k];
          dh += w2[std::size_t(j) * out + k] * dlogit[k];
        }
        const double dpre = (1.0 - f.hidden[j] * f.hidden[j]) * dh;
        gb1[j] += dpre;
        for (int i = 0; i < in; ++i) {
          gw1[std::size_t(i) * hid + j] += x[i] * dpre;
        }
      }
    }
    const double inv = 1.0 / double(end - begin);
    sum *= inv;
    for (double& g : grad) g *= inv;
    return std::make_pair(sum, grad);
  };
  auto mean_loss = [&](const std::vector<double>& p, bool on_train,
                       long long*) {
    const EncodedSet& data = on_train ? train : val;
    double sum = 0.0;
    for (int s = 0; s < data.size(); ++s) {
      MlpForward f = mlp_forward(mlp, p, data.phases[s]);
      sum += cross_entropy(f.probs, data.labels[s]);
    }
    return sum / double(data.size());
  };

  TrainReport report =
      adam_loop(mlp.param_count(), config, train.size(), batch_lg, mean_loss);
  EvalResult vr = mlp_evaluate(mlp, report.final_params, val);
  report.val_accuracy = vr.accuracy;
  return report;
}

EvalResult mlp_evaluate(const MlpSpec& mlp, const std::vector<double>& params,
                        const EncodedSet& data) {
  if (data.size() < 1) throw invalid_input_error("empty evaluation set");
  std::vector<int> preds;
  double loss_sum = 0.0;
  for (int s = 0; s < data.size(); ++s) {
    MlpForward f = mlp_forward(mlp, params, data.phases[s]);
    preds.push_back(predict(f.probs));
    loss_sum += cross_entropy(f.probs, data.labels[s]);
  }
  EvalResult result;
  result.cm = confusion(preds, data.labels, mlp.output_dim);
  result.accuracy = accuracy(result.cm);
  result.mean_loss = loss_sum / double(data.size());
  return result;
}

}  // namespace vpc
