#include "vpc/readout.hpp"

#include <algorithm>
#include <cmath>

#include "vpc/errors.hpp"

namespace vpc {

double binary_prob(const PhasorState& s) {
  if (s.n() < 1) throw dimension_error("binary readout needs thread 0");
  const double r = std::abs(s.amps[0]);
  if (r < kPullbackEps) throw degenerate_amplitude_error(0, r);
  return (std::sin(arg_principal(s.amps[0])) + 1.0) / 2.0;
}

std::vector<double> multiclass_logits(const PhasorState& s, int k_classes) {
  if (s.n() < k_classes) {
    throw dimension_error("need " + std::to_string(k_classes) +
                          " readout threads, state has " +
                          std::to_string(s.n()));
  }
  std::vector<double> logits(k_classes);
  for (int k = 0; k < k_classes; ++k) {
    const double r = std::abs(s.amps[k]);
    if (r < kPullbackEps) throw degenerate_amplitude_error(k, r);
    logits[k] = std::abs(arg_principal(s.amps[k]));
  }
  return logits;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  double m = logits[0];
  for (double v : logits) m = std::max(m, v);
  std::vector<double> probs(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - m);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

double mse_loss(double p, int y) {
  const double d = p - double(y);
  return d * d;
}

double mse_loss_dp(double p, int y) { return 2.0 * (p - double(y)); }

double cross_entropy(const std::vector<double>& probs, int y) {
  // max() rather than adding an epsilon: uniform probabilities must give
  // exactly ln K, and the floor still prevents -inf on saturated outputs.
  return -std::log(std::max(probs[y], 1e-12));
}

std::vector<double> cross_entropy_logit_grad(const std::vector<double>& probs,
                                             int y) {
  std::vector<double> g = probs;
  g[y] -= 1.0;
  return g;
}

int predict(const std::vector<double>& probs) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(probs.size()); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

long long ConfusionMatrix::total() const {
  long long t = 0;
  for (long long c : counts) t += c;
  return t;
}

ConfusionMatrix confusion(const std::vector<int>& preds,
                          const std::vector<int>& labels, int k_classes) {
  if (preds.empty() || preds.size() != labels.size()) {
    throw invalid_input_error("confusion: empty or mismatched prediction set");
  }
  ConfusionMatrix cm;
  cm.k_classes = k_classes;
  cm.counts.assign(std::size_t(k_classes) * k_classes, 0);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    cm.at(labels[i], preds[i]) += 1;
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  long long diag = 0;
  for (int k = 0; k < cm.k_classes; ++k) diag += cm.at(k, k);
  return double(diag) / double(cm.total());
}

// d(arg)/d(x, y) = (-y, x) / r^2; smooth away from the origin, and the
// branch cut does not enter the derivative.
static Cx arg_gradient(Cx z) {
  const double r2 = std::norm(z);
  return Cx(-z.imag() / r2, z.real() / r2);
}

ScalarLoss make_binary_mse(int y) {
  ScalarLoss loss;
  loss.value = [y](const PhasorState& s) {
    return mse_loss(binary_prob(s), y);
  };
  loss.cotangent = [y](const PhasorState& s) {
    Cotangent cot;
    cot.d.assign(s.amps.size(), Cx(0, 0));
    const double phi = arg_principal(s.amps[0]);
    const double p = (std::sin(phi) + 1.0) / 2.0;
    const double dl_dphi = mse_loss_dp(p, y) * std::cos(phi) / 2.0;
    cot.d[0] = dl_dphi * arg_gradient(s.amps[0]);
    return cot;
  };
  return loss;
}

ScalarLoss make_multiclass_ce(int y, int k_classes) {
  ScalarLoss loss;
  loss.value = [y, k_classes](const PhasorState& s) {
    return cross_entropy(softmax(multiclass_logits(s, k_classes)), y);
  };
  loss.cotangent = [y, k_classes](const PhasorState& s) {
    Cotangent cot;
    cot.d.assign(s.amps.size(), Cx(0, 0));
    const std::vector<double> probs =
        softmax(multiclass_logits(s, k_classes));
    const std::vector<double> dlogit = cross_entropy_logit_grad(probs, y);
    for (int k = 0; k < k_classes; ++k) {
      const double phi = arg_principal(s.amps[k]);
      // |phi| has a kink at 0; its subgradient there is 0.
      const double sgn = (phi > 0.0) - (phi < 0.0);
      cot.d[k] = dlogit[k] * sgn * arg_gradient(s.amps[k]);
    }
    return cot;
  };
  return loss;
}

}  // namespace vpc
