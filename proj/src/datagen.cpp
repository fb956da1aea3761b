#include "vpc/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "vpc/errors.hpp"
#include "vpc/rng.hpp"
#include "vpc/serialize.hpp"

#include <json.hpp>

namespace vpc {

// Four sign patterns at different spatial scales so every class pair
// disagrees on exactly half the channels:
//   0 "left"    +a on the first half, -a on the second
//   1 "blocks"  alternating quarter-width bands, starting +a
//   2 "checker" per-channel alternation, starting +a
//   3 "right"   mirror image of "left"
std::vector<double> class_template(int label, int n_channels,
                                   double amplitude) {
  if (n_channels < 4) throw invalid_input_error("need at least 4 channels");
  std::vector<double> t(n_channels);
  for (int k = 0; k < n_channels; ++k) {
    bool plus = false;
    switch (label) {
      case 0:
        plus = k < n_channels / 2;
        break;
      case 1:
        plus = ((4 * k) / n_channels) % 2 == 0;
        break;
      case 2:
        plus = k % 2 == 0;
        break;
      case 3:
        plus = k >= n_channels / 2;
        break;
      default:
        throw invalid_input_error("label out of range: " +
                                  std::to_string(label));
    }
    t[k] = plus ? amplitude : -amplitude;
  }
  return t;
}

static const char* kFourClassNames[4] = {"left", "blocks", "checker",
                                         "right"};

Dataset generate(const GenSpec& spec) {
  if (spec.n_channels < 4) throw invalid_input_error("need >= 4 channels");
  if (spec.n_classes != 2 && spec.n_classes != 4) {
    throw invalid_input_error("supported class counts: 2 or 4");
  }
  if (spec.samples_per_class < 1) {
    throw invalid_input_error("need >= 1 sample per class");
  }
  if (!(spec.noise_sigma >= 0.0)) {
    throw invalid_input_error("noise sigma must be >= 0");
  }

  Dataset ds;
  ds.n_channels = spec.n_channels;

  // The two-class task keeps the lateralized pair: labels (0, 1) map to
  // the "left" and "right" templates.
  std::vector<int> template_ids;
  if (spec.n_classes == 2) {
    template_ids = {0, 3};
    ds.class_names = {"left", "right"};
  } else {
    template_ids = {0, 1, 2, 3};
    ds.class_names = {"left", "blocks", "checker", "right"};
  }

  for (int c = 0; c < spec.n_classes; ++c) {
    const std::vector<double> tmpl =
        class_template(template_ids[c], spec.n_channels, spec.amplitude);
    for (int i = 0; i < spec.samples_per_class; ++i) {
      // Each snapshot draws from its own stream keyed by (seed, class,
      // sample index), so the noise is independent of iteration order.
      GaussianStream gauss(derive_seed(spec.seed, std::uint64_t(c), i));
      Snapshot s;
      s.label = c;
      s.values.resize(spec.n_channels);
      for (int k = 0; k < spec.n_channels; ++k) {
        s.values[k] = tmpl[k] + spec.noise_sigma * gauss.next();
      }
      ds.snapshots.push_back(std::move(s));
    }
  }
  return ds;
}

SplitResult stratified_split(const Dataset& ds, const SplitSpec& spec) {
  const double total = spec.train_frac + spec.val_frac + spec.test_frac;
  if (std::abs(total - 1.0) > 1e-9) {
    throw invalid_split_error("split fractions must sum to 1");
  }

  int n_classes = 0;
  for (const Snapshot& s : ds.snapshots) {
    n_classes = std::max(n_classes, s.label + 1);
  }

  SplitResult out;
  out.train.n_channels = ds.n_channels;
  out.val.n_channels = ds.n_channels;
  out.test.n_channels = ds.n_channels;
  out.train.class_names = ds.class_names;
  out.val.class_names = ds.class_names;
  out.test.class_names = ds.class_names;

  for (int c = 0; c < n_classes; ++c) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(ds.snapshots.size()); ++i) {
      if (ds.snapshots[i].label == c) idx.push_back(i);
    }
    // Fisher-Yates with a per-class stream, then contiguous allocation.
    SplitMix64 rng(derive_seed(spec.seed, 0x53504C49u /*"SPLI"*/, c));
    for (int i = static_cast<int>(idx.size()) - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.below(std::uint64_t(i) + 1));
      std::swap(idx[i], idx[j]);
    }
    const int n = static_cast<int>(idx.size());
    const int n_train = static_cast<int>(std::floor(spec.train_frac * n));
    const int n_val = static_cast<int>(std::floor(spec.val_frac * n));
    const int n_test = n - n_train - n_val;
    if (n_train < 1 || n_val < 1 || n_test < 1) {
      throw invalid_split_error("a split received no samples for class " +
                                std::to_string(c));
    }
    for (int i = 0; i < n; ++i) {
      const Snapshot& s = ds.snapshots[idx[i]];
      if (i < n_train) {
        out.train.snapshots.push_back(s);
      } else if (i < n_train + n_val) {
        out.val.snapshots.push_back(s);
      } else {
        out.test.snapshots.push_back(s);
      }
    }
  }
  return out;
}

std::string dataset_csv(const Dataset& ds) {
  std::string out = "label";
  for (int k = 0; k < ds.n_channels; ++k) {
    out += ",ch" + std::to_string(k);
  }
  out += "\n";
  for (const Snapshot& s : ds.snapshots) {
    out += std::to_string(s.label);
    for (double v : s.values) {
      out += ",";
      out += format_double(v);
    }
    out += "\n";
  }
  return out;
}

void write_csv(const Dataset& ds, const std::string& path) {
  write_text_file(path, dataset_csv(ds));
}

Dataset read_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw io_error("empty csv: " + path);

  int n_channels = 0;
  for (char ch : line) {
    if (ch == ',') ++n_channels;
  }
  if (n_channels < 1) throw io_error("csv header has no channels: " + path);

  Dataset ds;
  ds.n_channels = n_channels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    Snapshot s;
    if (!std::getline(row, cell, ',')) throw io_error("bad csv row: " + path);
    s.label = std::stoi(cell);
    while (std::getline(row, cell, ',')) {
      s.values.push_back(std::stod(cell));
    }
    if (static_cast<int>(s.values.size()) != n_channels) {
      throw io_error("csv row width mismatch: " + path);
    }
    ds.snapshots.push_back(std::move(s));
  }

  int n_classes = 0;
  for (const Snapshot& s : ds.snapshots) {
    n_classes = std::max(n_classes, s.label + 1);
  }
  if (n_classes == 2) {
    ds.class_names = {"left", "right"};
  } else if (n_classes == 4) {
    ds.class_names = {kFourClassNames[0], kFourClassNames[1],
                      kFourClassNames[2], kFourClassNames[3]};
  }
  return ds;
}

std::uint64_t fnv1a(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string dataset_hash(const Dataset& ds) {
  const std::string csv = dataset_csv(ds);
  const std::uint64_t h = fnv1a(csv.data(), csv.size());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

void write_genspec_json(const GenSpec& spec, const std::string& path) {
  nlohmann::json j;
  j["amplitude"] = spec.amplitude;
  j["n_channels"] = spec.n_channels;
  j["n_classes"] = spec.n_classes;
  j["noise_sigma"] = spec.noise_sigma;
  j["samples_per_class"] = spec.samples_per_class;
  j["seed"] = spec.seed;
  write_text_file(path, j.dump(2) + "\n");
}

GenSpec read_genspec_json(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw io_error("bad generator config json: " + std::string(e.what()));
  }
  GenSpec spec;
  if (j.contains("n_channels")) spec.n_channels = j["n_channels"];
  if (j.contains("n_classes")) spec.n_classes = j["n_classes"];
  if (j.contains("samples_per_class"))
    spec.samples_per_class = j["samples_per_class"];
  if (j.contains("noise_sigma")) spec.noise_sigma = j["noise_sigma"];
  if (j.contains("amplitude")) spec.amplitude = j["amplitude"];
  if (j.contains("seed")) spec.seed = j["seed"];
  return spec;
}

}  // namespace vpc
