#pragma once

#include <vector>

#include "vpc/state.hpp"

namespace vpc {

// Per-snapshot standardization with the population (divide-by-N) standard
// deviation. Snapshots with standard deviation below 1e-12 are rejected:
// they carry no spatial information and would silently collapse classes.
std::vector<double> zscore(const std::vector<double>& values);

// Saturating angle map phi_k = pi * tanh(x_k). Standardized snapshots have
// |x_k| <= sqrt(N-1), far below tanh's double-precision saturation point,
// so encoded phases stay strictly inside (-pi, pi) and never touch the
// wrap-around point.
std::vector<double> phase_encode(const std::vector<double>& normed);

// zscore then phase_encode then lift onto the torus.
PhasorState encode(const std::vector<double>& values);

}  // namespace vpc
