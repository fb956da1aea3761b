#pragma once

#include <cmath>
#include <cstdint>

namespace vpc {

// SplitMix64: tiny, well-known, platform-independent 64-bit generator.
// Chosen because the data pipeline needs bit-identical streams everywhere a
// build of this project runs; the state transition and output mix use only
// exact integer arithmetic.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) using the top 53 bits.
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Unbiased integer in [0, n) via rejection sampling; exact on all targets.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }
};

// SplitMix64 output mix as a standalone hash, used to derive substreams.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Independent stream seed from (root seed, stream tag, element index).
// Feeding each (tag, index) pair through the mix keeps streams decorrelated
// without coordinating consumption order across streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t index) {
  std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull * (tag + 1));
  return mix64(h + 0x9E3779B97F4A7C15ull * (index + 1));
}

// Standard normal deviates via the basic Box-Muller transform.  The pair
// (cos, sin) is consumed in order, so one stream yields a fixed sequence.
struct GaussianStream {
  SplitMix64 rng;
  bool have_spare = false;
  double spare = 0.0;

  explicit GaussianStream(std::uint64_t seed) : rng(seed) {}

  double next() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    double u1 = rng.uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;  // log(0) guard; keeps the map total
    const double u2 = rng.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare = r * std::sin(a);
    have_spare = true;
    return r * std::cos(a);
  }
};

}  // namespace vpc
