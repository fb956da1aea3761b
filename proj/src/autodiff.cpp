#include "vpc/autodiff.hpp"

#include <cmath>
#include <numbers>

#include "vpc/errors.hpp"

namespace vpc {

static const double kInvSqrt2 = 1.0 / std::numbers::sqrt2_v<double>;

std::pair<Cotangent, std::vector<double>> vjp_shift(
    const Cotangent& cot, const PhasorState& pre,
    const std::vector<double>& thetas) {
  const int n = pre.n();
  if (cot.n() != n || static_cast<int>(thetas.size()) != n) {
    throw dimension_error("shift vjp: mismatched cotangent/state/angle sizes");
  }
  Cotangent in;
  in.d.resize(n);
  std::vector<double> grad(n);
  for (int k = 0; k < n; ++k) {
    const Cx rot(std::cos(thetas[k]), std::sin(thetas[k]));
    const Cx post = pre.amps[k] * rot;
    // d(post)/d(theta) = i * post; contract with (d_re, d_im).
    grad[k] = cot.d[k].real() * (-post.imag()) + cot.d[k].imag() * post.real();
    // The layer is the fixed rotation `rot` in real coordinates; its
    // transpose-Jacobian is rotation by the opposite angle.
    in.d[k] = cot.d[k] * std::conj(rot);
  }
  return {std::move(in), std::move(grad)};
}

Cotangent vjp_mix_layer(const Cotangent& cot, bool odd) {
  Cotangent out = cot;
  const int n = cot.n();
  for (int j = odd ? 1 : 0; j + 1 < n; j += 2) {
    const Cx a = out.d[j];
    const Cx b = out.d[j + 1];
    // Transpose of the real 4x4 pair map; equals the conjugate-transpose
    // (1/sqrt2)[[1, -i], [-i, 1]] acting on the packed pair.
    out.d[j] = (a - Cx(0, 1) * b) * kInvSqrt2;
    out.d[j + 1] = (-Cx(0, 1) * a + b) * kInvSqrt2;
  }
  return out;
}

Cotangent vjp_normalize(const Cotangent& cot, const PhasorState& pre) {
  const int n = pre.n();
  if (cot.n() != n) {
    throw dimension_error("normalize vjp: mismatched cotangent/state sizes");
  }
  Cotangent out;
  out.d.resize(n);
  for (int k = 0; k < n; ++k) {
    const double x = pre.amps[k].real();
    const double y = pre.amps[k].imag();
    const double r = std::abs(pre.amps[k]);
    if (r < kPullbackEps) throw degenerate_amplitude_error(k, r);
    const double r3 = r * r * r;
    const double cx = cot.d[k].real();
    const double cy = cot.d[k].imag();
    // Symmetric Jacobian of (x, y) -> (x, y)/r: (1/r^3)[[y^2, -xy], [-xy, x^2]].
    out.d[k] = Cx((y * y * cx - x * y * cy) / r3,
                  (-x * y * cx + x * x * cy) / r3);
  }
  return out;
}

std::vector<double> backward(const Tape& tape, const CircuitSpec& spec,
                             const std::vector<double>& params,
                             const Cotangent& out_cot) {
  if (tape.pre.size() != spec.layers.size()) {
    throw dimension_error("tape does not match circuit layer count");
  }
  if (static_cast<int>(params.size()) != spec.param_count()) {
    throw dimension_error("backward: param count mismatch");
  }
  std::vector<double> grad(params.size(), 0.0);
  Cotangent cot = out_cot;
  for (int i = static_cast<int>(spec.layers.size()) - 1; i >= 0; --i) {
    const GateLayer& l = spec.layers[i];
    switch (l.kind) {
      case LayerKind::Shift: {
        std::vector<double> thetas(params.begin() + l.param_offset,
                                   params.begin() + l.param_offset +
                                       spec.n_threads);
        auto [in, g] = vjp_shift(cot, tape.pre[i], thetas);
        for (int k = 0; k < spec.n_threads; ++k) grad[l.param_offset + k] = g[k];
        cot = std::move(in);
        break;
      }
      case LayerKind::MixEven:
        cot = vjp_mix_layer(cot, /*odd=*/false);
        break;
      case LayerKind::MixOdd:
        cot = vjp_mix_layer(cot, /*odd=*/true);
        break;
      case LayerKind::Normalize:
        cot = vjp_normalize(cot, tape.pre[i]);
        break;
    }
  }
  return grad;
}

std::pair<double, std::vector<double>> loss_and_grad(
    const CircuitSpec& spec, const std::vector<double>& params,
    const PhasorState& input, const ScalarLoss& loss) {
  Tape tape;
  const PhasorState out = forward(spec, params, input, &tape);
  const double value = loss.value(out);
  const Cotangent cot = loss.cotangent(out);
  return {value, backward(tape, spec, params, cot)};
}

GradReport grad_check(const CircuitSpec& spec, const std::vector<double>& params,
                      const PhasorState& input, const ScalarLoss& loss,
                      double fd_step) {
  GradReport report;
  report.analytic = loss_and_grad(spec, params, input, loss).second;
  report.fd.resize(params.size());
  std::vector<double> p = params;
  for (std::size_t i = 0; i < params.size(); ++i) {
    p[i] = params[i] + fd_step;
    const double up = loss.value(forward(spec, p, input));
    p[i] = params[i] - fd_step;
    const double dn = loss.value(forward(spec, p, input));
    p[i] = params[i];
    report.fd[i] = (up - dn) / (2.0 * fd_step);
  }
  report.max_rel_err = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double denom = std::max({std::abs(report.analytic[i]),
                                   std::abs(report.fd[i]), 1e-8});
    const double rel = std::abs(report.analytic[i] - report.fd[i]) / denom;
    if (rel > report.max_rel_err) report.max_rel_err = rel;
  }
  return report;
}

}  // namespace vpc
