#include "vpc/state.hpp"

#include <cmath>

#include "vpc/errors.hpp"

namespace vpc {

double arg_principal(Cx z) {
  const double a = std::atan2(z.imag(), z.real());
  // atan2 returns [-pi, pi]; fold the negative edge onto +pi so the result
  // lives in (-pi, pi].
  if (a == -3.14159265358979323846) return 3.14159265358979323846;
  return a;
}

PhasorState state_from_phases(const std::vector<double>& phases) {
  PhasorState s;
  s.amps.reserve(phases.size());
  for (double phi : phases) {
    if (!std::isfinite(phi)) {
      throw invalid_input_error("non-finite phase in state construction");
    }
    s.amps.emplace_back(std::cos(phi), std::sin(phi));
  }
  return s;
}

std::vector<double> phases_of(const PhasorState& s) {
  std::vector<double> out;
  out.reserve(s.amps.size());
  for (const Cx& z : s.amps) out.push_back(arg_principal(z));
  return out;
}

bool is_on_torus(const PhasorState& s, double tol) {
  for (const Cx& z : s.amps) {
    if (std::abs(std::abs(z) - 1.0) > tol) return false;
  }
  return true;
}

double l2_norm(const PhasorState& s) {
  double sum = 0.0;
  for (const Cx& z : s.amps) sum += std::norm(z);
  return std::sqrt(sum);
}

}  // namespace vpc
