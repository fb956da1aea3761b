// Independent reference implementations used only by tests. Everything here
// is written against the mathematical definitions, not against the library
// code, so agreement between the two is meaningful evidence.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "vpc/circuit.hpp"
#include "vpc/state.hpp"

namespace oracle {

using Cx = std::complex<double>;
using Mat = std::vector<std::vector<Cx>>;  // row-major dense

inline Mat identity(int n) {
  Mat m(n, std::vector<Cx>(n, Cx(0, 0)));
  for (int i = 0; i < n; ++i) m[i][i] = Cx(1, 0);
  return m;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  Mat c(n, std::vector<Cx>(n, Cx(0, 0)));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

inline std::vector<Cx> matvec(const Mat& a, const std::vector<Cx>& v) {
  const int n = static_cast<int>(a.size());
  std::vector<Cx> out(n, Cx(0, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i] += a[i][j] * v[j];
  }
  return out;
}

// Dense matrix of one parameterized layer. Only the linear layers (shift and
// mix) have one; the pull-back is nonlinear and must be applied pointwise.
inline Mat shift_matrix(int n, const double* thetas) {
  Mat m = identity(n);
  for (int i = 0; i < n; ++i) {
    m[i][i] = Cx(std::cos(thetas[i]), std::sin(thetas[i]));
  }
  return m;
}

inline Mat mix_matrix(int n, bool odd) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Mat m = identity(n);
  for (int j = odd ? 1 : 0; j + 1 < n; j += 2) {
    m[j][j] = Cx(inv_sqrt2, 0);
    m[j][j + 1] = Cx(0, inv_sqrt2);
    m[j + 1][j] = Cx(0, inv_sqrt2);
    m[j + 1][j + 1] = Cx(inv_sqrt2, 0);
  }
  return m;
}

// Forward pass through a circuit built from dense matrices (pull-back layers
// applied elementwise between the matrix products).
inline std::vector<Cx> dense_forward(const vpc::CircuitSpec& spec,
                                     const std::vector<double>& params,
                                     std::vector<Cx> v) {
  const int n = spec.n_threads;
  for (const vpc::GateLayer& layer : spec.layers) {
    switch (layer.kind) {
      case vpc::LayerKind::Shift:
        v = matvec(shift_matrix(n, params.data() + layer.param_offset), v);
        break;
      case vpc::LayerKind::MixEven:
        v = matvec(mix_matrix(n, false), v);
        break;
      case vpc::LayerKind::MixOdd:
        v = matvec(mix_matrix(n, true), v);
        break;
      case vpc::LayerKind::Normalize:
        for (Cx& z : v) z /= std::abs(z);
        break;
    }
  }
  return v;
}

// --- independent pseudo-random stream -------------------------------------
// Same published algorithm, reimplemented from its definition.

struct RefSplitMix {
  std::uint64_t s;

  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double u01() { return double(next() >> 11) * 0x1.0p-53; }
};

// --- scalar references -----------------------------------------------------

inline std::vector<double> ref_softmax(const std::vector<double>& logits) {
  double m = logits[0];
  for (double v : logits) m = std::max(m, v);
  double z = 0.0;
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) z += std::exp(logits[i] - m);
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - m) / z;
  }
  return out;
}

inline std::uint64_t ref_fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;  // 0xcbf29ce484222325
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;  // 0x100000001b3
  }
  return h;
}

}  // namespace oracle
