#include "vpc/encoding.hpp"

#include <cmath>
#include <numbers>

#include "vpc/errors.hpp"

namespace vpc {

std::vector<double> zscore(const std::vector<double>& x) {
  if (x.empty()) throw invalid_input_error("zscore: empty snapshot");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= double(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= double(x.size());  // population variance
  const double sigma = std::sqrt(var);
  if (sigma < 1e-12) {
    throw constant_snapshot_error(
        "snapshot standard deviation below 1e-12; cannot standardize");
  }
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean) / sigma;
  return out;
}

std::vector<double> phase_encode(const std::vector<double>& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::numbers::pi * std::tanh(x[i]);  // strictly inside (-pi, pi)
  }
  return out;
}

PhasorState encode(const std::vector<double>& snapshot) {
  return state_from_phases(phase_encode(zscore(snapshot)));
}

}  // namespace vpc
