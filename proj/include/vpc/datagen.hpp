#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vpc {

// Synthetic multichannel snapshot generator settings.
struct GenSpec {
  int n_channels = 32;
  int n_classes = 4;  // 2 or 4
  int samples_per_class = 200;
  double noise_sigma = 0.1;
  double amplitude = 1.5;
  std::uint64_t seed = 1;
};

struct Snapshot {
  std::vector<double> values;
  int label = 0;
};

struct Dataset {
  int n_channels = 0;
  std::vector<Snapshot> snapshots;
  std::vector<std::string> class_names;
};

// Class-conditioned spatial template over the channel array.  The four-class
// family uses sign patterns at four distinct spatial scales, so every class
// pair disagrees on half the channels:
//   class 0 "left":    +a on the first floor(N/2) channels, -a on the rest
//   class 1 "blocks":  +a / -a alternating in quarter-array blocks
//   class 2 "checker": +a / -a alternating per channel
//   class 3 "right":   channel-mirror of class 0 (sign-flipped "left")
// The two-class task keeps the lateralized pair: labels (0, 1) map to
// templates ("left", "right").
std::vector<double> class_template(int cls, int n_channels, double amplitude);

// Template plus i.i.d. Gaussian noise. Each snapshot's noise comes from its
// own SplitMix64 / Box-Muller stream seeded from (seed, class, sample index),
// so generation is bit-reproducible and order-independent.
Dataset generate(const GenSpec& spec);

struct SplitSpec {
  double train_frac = 0.60;
  double val_frac = 0.15;
  double test_frac = 0.25;
  std::uint64_t seed = 1;
};

struct SplitResult {
  Dataset train, val, test;
};

// Per-class Fisher-Yates shuffle with the split seed, then proportional
// allocation: floor(frac * n) for train and val, remainder to test.
SplitResult stratified_split(const Dataset& data, const SplitSpec& split);

// Canonical CSV form: header "label,ch0,...,chN-1", one row per snapshot,
// floats printed with 17 significant digits (round-trip exact).
std::string dataset_csv(const Dataset& data);
void write_csv(const Dataset& data, const std::string& path);
Dataset read_csv(const std::string& path);

// FNV-1a (64-bit) over the canonical CSV bytes, as 16 hex digits.
std::uint64_t fnv1a(const void* bytes, std::size_t len);
std::string dataset_hash(const Dataset& data);

// Sidecar JSON describing the generator settings that produced a CSV.
void write_genspec_json(const GenSpec& spec, const std::string& path);
GenSpec read_genspec_json(const std::string& path);

}  // namespace vpc
