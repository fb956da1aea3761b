#pragma once

#include <string>
#include <vector>

#include "vpc/state.hpp"

namespace vpc {

enum class LayerKind { Shift, MixEven, MixOdd, Normalize };

// One circuit layer. Shift layers own a contiguous block of n_threads
// trainable angles starting at param_offset; the other kinds are
// parameter-free.
struct GateLayer {
  LayerKind kind;
  int param_offset = -1;
};

// Declarative circuit description. Layers execute in order.
struct CircuitSpec {
  int n_threads = 0;
  std::vector<GateLayer> layers;

  // Total trainable angle count: n_threads per Shift layer.
  int param_count() const;

  // Canonical textual form: "threads=N" followed by layer tokens
  // shift | mix-even | mix-odd | normalize, whitespace separated.
  std::string to_text() const;
  static CircuitSpec parse(const std::string& text);

  // Built-in topologies. single_stack: [shift, mix-even, shift, mix-odd].
  // deep_* repeat [shift, mix-even, mix-odd] for `blocks` blocks; the stack
  // variant appends a pull-back normalize at each block boundary.
  static CircuitSpec single_stack(int n_threads);
  static CircuitSpec deep_circuit(int n_threads, int blocks = 4);
  static CircuitSpec deep_stack(int n_threads, int blocks = 4);
};

// Resolve a builtin name ("single-stack" | "deep-circuit" | "deep-stack")
// or fall back to CircuitSpec::parse for a textual layer list.
CircuitSpec circuit_from_name(const std::string& name, int n_threads);

// Recorded forward pass: the state entering each layer, in execution order,
// plus the final output.
struct Tape {
  std::vector<PhasorState> pre;
  PhasorState output;
};

// Gate primitives. All are pure: they return a new state.
PhasorState apply_shift(const PhasorState& s, const std::vector<double>& thetas);
PhasorState apply_mix_pair(const PhasorState& s, int j, int k);
PhasorState apply_mix_layer(const PhasorState& s, bool odd);
PhasorState apply_normalize(const PhasorState& s);

// Run the circuit. When tape is non-null, record every pre-layer state.
PhasorState forward(const CircuitSpec& spec, const std::vector<double>& params,
                    const PhasorState& input, Tape* tape = nullptr);

}  // namespace vpc
