#pragma once

#include <vector>

#include "vpc/autodiff.hpp"
#include "vpc/state.hpp"

namespace vpc {

// Two-class probability from the leading thread: (sin(arg z_0) + 1) / 2.
double binary_prob(const PhasorState& s);

// Phase-magnitude logits |arg z_k| for threads 0..K-1; each in [0, pi].
std::vector<double> multiclass_logits(const PhasorState& s, int k_classes);

// Max-subtracted stable softmax.
std::vector<double> softmax(const std::vector<double>& logits);

// Squared error against a 0/1 target, and its derivative in p.
double mse_loss(double p, int y);
double mse_loss_dp(double p, int y);

// Negative log likelihood of the true class. Probabilities are floored at
// 1e-12 inside the log so saturated outputs cannot produce -inf; the floor
// only alters losses that would exceed ~27.6.
double cross_entropy(const std::vector<double>& probs, int y);

// d(cross entropy)/d(logits) = probs - onehot(y).
std::vector<double> cross_entropy_logit_grad(const std::vector<double>& probs,
                                             int y);

// Argmax with lowest-index tie-break.
int predict(const std::vector<double>& probs);

// Rows = true class, columns = predicted class.
struct ConfusionMatrix {
  int k_classes = 0;
  std::vector<long long> counts;  // row-major k x k

  long long& at(int truth, int pred) { return counts[truth * k_classes + pred]; }
  long long at(int truth, int pred) const { return counts[truth * k_classes + pred]; }
  long long total() const;
};

ConfusionMatrix confusion(const std::vector<int>& preds,
                          const std::vector<int>& labels, int k_classes);
double accuracy(const ConfusionMatrix& cm);

// Loss factories for the gradient engine. The multiclass logit |phi| has a
// kink at phi = 0; its subgradient there is taken as 0, which keeps training
// deterministic.
ScalarLoss make_binary_mse(int y);
ScalarLoss make_multiclass_ce(int y, int k_classes);

}  // namespace vpc
