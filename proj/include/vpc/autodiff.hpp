#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "vpc/circuit.hpp"
#include "vpc/state.hpp"

namespace vpc {

// Gradient of a scalar loss with respect to the real and imaginary parts of
// every thread amplitude, packed as (d_re, d_im) per thread. The complex
// container is storage only: entries are independent real sensitivities, not
// holomorphic derivatives (pull-back and phase readouts are not holomorphic,
// so everything here works in real coordinates).
struct Cotangent {
  std::vector<Cx> d;

  int n() const { return static_cast<int>(d.size()); }
};

// Reverse step through a shift layer: returns the incoming cotangent and the
// gradient with respect to this layer's angles.
std::pair<Cotangent, std::vector<double>> vjp_shift(
    const Cotangent& cot, const PhasorState& pre,
    const std::vector<double>& thetas);

// Reverse step through a mix layer (adjoint of the pair map).
Cotangent vjp_mix_layer(const Cotangent& cot, bool odd);

// Reverse step through the pull-back: per-thread symmetric Jacobian of
// (x, y) -> (x, y)/r applied to the cotangent.
Cotangent vjp_normalize(const Cotangent& cot, const PhasorState& pre);

// Walk the tape backwards and accumulate d(loss)/d(theta) in parameter order.
std::vector<double> backward(const Tape& tape, const CircuitSpec& spec,
                             const std::vector<double>& params,
                             const Cotangent& out_cot);

// A scalar readout of the final state, with its real-coordinate derivative.
struct ScalarLoss {
  std::function<double(const PhasorState&)> value;
  std::function<Cotangent(const PhasorState&)> cotangent;
};

// Loss value and full parameter gradient in one recorded pass.
std::pair<double, std::vector<double>> loss_and_grad(
    const CircuitSpec& spec, const std::vector<double>& params,
    const PhasorState& input, const ScalarLoss& loss);

struct GradReport {
  std::vector<double> analytic;
  std::vector<double> fd;
  double max_rel_err = 0.0;
};

// Analytic gradient vs central finite differences, per parameter. Relative
// error uses denominator max(|analytic|, |fd|, 1e-8).
GradReport grad_check(const CircuitSpec& spec, const std::vector<double>& params,
                      const PhasorState& input, const ScalarLoss& loss,
                      double fd_step = 1e-5);

}  // namespace vpc
