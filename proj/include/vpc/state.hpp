#pragma once

#include <complex>
#include <vector>

namespace vpc {

using Cx = std::complex<double>;

// Tolerance below which a thread amplitude counts as degenerate for the
// pull-back map and phase readouts.
inline constexpr double kPullbackEps = 1e-12;

// One sample's circuit state: an ordered vector of complex thread amplitudes.
// States produced by phase encoding live on the unit torus (all moduli 1);
// mixing legally leaves the torus, so that is a predicate, not an invariant.
struct PhasorState {
  std::vector<Cx> amps;

  int n() const { return static_cast<int>(amps.size()); }
};

// Principal argument in (-pi, pi]: atan2 with the -pi edge folded to +pi.
double arg_principal(Cx z);

// Build the on-torus state z_k = e^{i phi_k}. Non-finite phases are rejected.
PhasorState state_from_phases(const std::vector<double>& phases);

// Principal argument of every thread.
std::vector<double> phases_of(const PhasorState& s);

// True when every thread modulus is within tol of 1.
bool is_on_torus(const PhasorState& s, double tol = 1e-12);

// Euclidean norm over all threads (sqrt of sum of squared moduli).
double l2_norm(const PhasorState& s);

}  // namespace vpc
