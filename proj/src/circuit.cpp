#include "vpc/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vpc/errors.hpp"

namespace vpc {

// Evaluated once so every mix application multiplies by the identical double.
static const double kInvSqrt2 = 1.0 / std::numbers::sqrt2_v<double>;

int CircuitSpec::param_count() const {
  int shifts = 0;
  for (const GateLayer& l : layers) {
    if (l.kind == LayerKind::Shift) ++shifts;
  }
  return n_threads * shifts;
}

std::string CircuitSpec::to_text() const {
  std::ostringstream out;
  out << "threads=" << n_threads;
  for (const GateLayer& l : layers) {
    switch (l.kind) {
      case LayerKind::Shift: out << " shift"; break;
      case LayerKind::MixEven: out << " mix-even"; break;
      case LayerKind::MixOdd: out << " mix-odd"; break;
      case LayerKind::Normalize: out << " normalize"; break;
    }
  }
  return out.str();
}

CircuitSpec CircuitSpec::parse(const std::string& text) {
  CircuitSpec spec;
  std::istringstream in(text);
  std::string tok;
  int next_offset = 0;
  bool have_threads = false;
  while (in >> tok) {
    if (tok.rfind("threads=", 0) == 0) {
      try {
        spec.n_threads = std::stoi(tok.substr(8));
      } catch (const std::exception&) {
        throw config_error("bad thread count in circuit text: " + tok);
      }
      have_threads = true;
    } else if (tok == "shift") {
      spec.layers.push_back({LayerKind::Shift, next_offset});
      next_offset += spec.n_threads;
    } else if (tok == "mix-even") {
      spec.layers.push_back({LayerKind::MixEven});
    } else if (tok == "mix-odd") {
      spec.layers.push_back({LayerKind::MixOdd});
    } else if (tok == "normalize") {
      spec.layers.push_back({LayerKind::Normalize});
    } else {
      throw config_error("unknown circuit token: " + tok);
    }
  }
  if (!have_threads || spec.n_threads < 1) {
    throw config_error("circuit text needs threads=N before layer tokens");
  }
  // Offsets were accumulated while parsing; they are only valid if threads=
  // came first, so recompute them.
  int offset = 0;
  for (GateLayer& l : spec.layers) {
    if (l.kind == LayerKind::Shift) {
      l.param_offset = offset;
      offset += spec.n_threads;
    }
  }
  return spec;
}

CircuitSpec CircuitSpec::single_stack(int n_threads) {
  CircuitSpec spec;
  spec.n_threads = n_threads;
  spec.layers = {{LayerKind::Shift, 0},
                 {LayerKind::MixEven},
                 {LayerKind::Shift, n_threads},
                 {LayerKind::MixOdd}};
  return spec;
}

CircuitSpec CircuitSpec::deep_circuit(int n_threads, int blocks) {
  CircuitSpec spec;
  spec.n_threads = n_threads;
  for (int b = 0; b < blocks; ++b) {
    spec.layers.push_back({LayerKind::Shift, b * n_threads});
    spec.layers.push_back({LayerKind::MixEven});
    spec.layers.push_back({LayerKind::MixOdd});
  }
  return spec;
}

CircuitSpec CircuitSpec::deep_stack(int n_threads, int blocks) {
  CircuitSpec spec = deep_circuit(n_threads, blocks);
  // Insert a pull-back at each block boundary.
  CircuitSpec out;
  out.n_threads = n_threads;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    out.layers.push_back(spec.layers[i]);
    if (spec.layers[i].kind == LayerKind::MixOdd) {
      out.layers.push_back({LayerKind::Normalize});
    }
  }
  return out;
}

CircuitSpec circuit_from_name(const std::string& name, int n_threads) {
  if (name == "single-stack") return CircuitSpec::single_stack(n_threads);
  if (name == "deep-circuit") return CircuitSpec::deep_circuit(n_threads);
  if (name == "deep-stack") return CircuitSpec::deep_stack(n_threads);
  return CircuitSpec::parse(name);
}

PhasorState apply_shift(const PhasorState& s, const std::vector<double>& thetas) {
  if (static_cast<int>(thetas.size()) != s.n()) {
    throw dimension_error("shift layer: " + std::to_string(thetas.size()) +
                          " angles for " + std::to_string(s.n()) + " threads");
  }
  PhasorState out = s;
  for (int k = 0; k < s.n(); ++k) {
    out.amps[k] = s.amps[k] * Cx(std::cos(thetas[k]), std::sin(thetas[k]));
  }
  return out;
}

PhasorState apply_mix_pair(const PhasorState& s, int j, int k) {
  if (j == k || j < 0 || k < 0 || j >= s.n() || k >= s.n()) {
    throw dimension_error("mix pair (" + std::to_string(j) + ", " +
                          std::to_string(k) + ") out of range for " +
                          std::to_string(s.n()) + " threads");
  }
  PhasorState out = s;
  const Cx zj = s.amps[j];
  const Cx zk = s.amps[k];
  out.amps[j] = (zj + Cx(0, 1) * zk) * kInvSqrt2;
  out.amps[k] = (Cx(0, 1) * zj + zk) * kInvSqrt2;
  return out;
}

PhasorState apply_mix_layer(const PhasorState& s, bool odd) {
  PhasorState out = s;
  for (int j = odd ? 1 : 0; j + 1 < s.n(); j += 2) {
    const Cx zj = out.amps[j];
    const Cx zk = out.amps[j + 1];
    out.amps[j] = (zj + Cx(0, 1) * zk) * kInvSqrt2;
    out.amps[j + 1] = (Cx(0, 1) * zj + zk) * kInvSqrt2;
  }
  return out;
}

PhasorState apply_normalize(const PhasorState& s) {
  PhasorState out = s;
  for (int k = 0; k < s.n(); ++k) {
    const double r = std::abs(s.amps[k]);
    if (r < kPullbackEps) throw degenerate_amplitude_error(k, r);
    out.amps[k] = s.amps[k] / r;
  }
  return out;
}

PhasorState forward(const CircuitSpec& spec, const std::vector<double>& params,
                    const PhasorState& input, Tape* tape) {
  if (input.n() != spec.n_threads) {
    throw dimension_error("input has " + std::to_string(input.n()) +
                          " threads, circuit expects " +
                          std::to_string(spec.n_threads));
  }
  if (static_cast<int>(params.size()) != spec.param_count()) {
    throw dimension_error("got " + std::to_string(params.size()) +
                          " params, circuit expects " +
                          std::to_string(spec.param_count()));
  }
  if (tape) {
    tape->pre.clear();
    tape->pre.reserve(spec.layers.size());
  }
  PhasorState s = input;
  for (const GateLayer& l : spec.layers) {
    if (tape) tape->pre.push_back(s);
    switch (l.kind) {
      case LayerKind::Shift: {
        std::vector<double> thetas(params.begin() + l.param_offset,
                                   params.begin() + l.param_offset +
                                       spec.n_threads);
        s = apply_shift(s, thetas);
        break;
      }
      case LayerKind::MixEven:
        s = apply_mix_layer(s, /*odd=*/false);
        break;
      case LayerKind::MixOdd:
        s = apply_mix_layer(s, /*odd=*/true);
        break;
      case LayerKind::Normalize:
        s = apply_normalize(s);
        break;
    }
  }
  if (tape) tape->output = s;
  return s;
}

}  // namespace vpc
