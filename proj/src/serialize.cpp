#include "vpc/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "vpc/errors.hpp"

#include <json.hpp>

namespace vpc {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::string loss_curve_csv(const std::vector<double>& train_loss,
                           const std::vector<double>& val_loss) {
  if (train_loss.size() != val_loss.size()) {
    throw invalid_input_error("loss curves have different lengths");
  }
  std::string out = "epoch,train_loss,val_loss\n";
  for (std::size_t e = 0; e < train_loss.size(); ++e) {
    out += std::to_string(e + 1);
    out += ",";
    out += format_double(train_loss[e]);
    out += ",";
    out += format_double(val_loss[e]);
    out += "\n";
  }
  return out;
}

std::string confusion_csv(const ConfusionMatrix& cm) {
  std::string out;
  for (int r = 0; r < cm.k_classes; ++r) {
    for (int c = 0; c < cm.k_classes; ++c) {
      if (c > 0) out += ",";
      out += std::to_string(cm.at(r, c));
    }
    out += "\n";
  }
  return out;
}

static const char* optimizer_name(OptimizerKind k) {
  return k == OptimizerKind::adam ? "adam" : "derivative_free";
}

static const char* loss_name(LossKind k) {
  return k == LossKind::mse ? "mse" : "cross_entropy";
}

std::string report_json(const std::string& experiment, std::uint64_t run_seed,
                        const GenSpec& gen, const SplitSpec& split,
                        const TrainConfig& train_cfg,
                        const std::string& circuit_text,
                        const std::string& data_hash,
                        const TrainReport& report) {
  nlohmann::json j;  // std::map-backed: keys serialize sorted
  j["experiment"] = experiment;
  j["seed"] = run_seed;
  j["dataset_hash"] = data_hash;
  j["circuit"] = circuit_text;
  j["param_count"] = report.param_count;
  j["optimizer"] = report.optimizer_name;
  j["epochs_run"] = report.epochs_run;
  j["initial_train_loss"] = report.initial_train_loss;
  j["final_train_loss"] =
      report.train_loss.empty() ? report.initial_train_loss
                                : report.train_loss.back();
  j["final_val_loss"] =
      report.val_loss.empty() ? 0.0 : report.val_loss.back();
  j["val_accuracy"] = report.val_accuracy;
  j["test_accuracy"] = report.test_accuracy;
  j["test_mean_loss"] = report.test_mean_loss;
  j["budget_exhausted"] = report.budget_exhausted;
  j["kink_events"] = report.kink_events;

  nlohmann::json jgen;
  jgen["amplitude"] = gen.amplitude;
  jgen["n_channels"] = gen.n_channels;
  jgen["n_classes"] = gen.n_classes;
  jgen["noise_sigma"] = gen.noise_sigma;
  jgen["samples_per_class"] = gen.samples_per_class;
  jgen["seed"] = gen.seed;
  j["generator"] = jgen;

  nlohmann::json jsplit;
  jsplit["train_frac"] = split.train_frac;
  jsplit["val_frac"] = split.val_frac;
  jsplit["test_frac"] = split.test_frac;
  jsplit["seed"] = split.seed;
  j["split"] = jsplit;

  nlohmann::json jtrain;
  jtrain["epochs"] = train_cfg.epochs;
  jtrain["learning_rate"] = train_cfg.learning_rate;
  jtrain["batch"] = train_cfg.batch;
  jtrain["optimizer"] = optimizer_name(train_cfg.optimizer);
  jtrain["loss"] = loss_name(train_cfg.loss);
  jtrain["seed"] = train_cfg.seed;
  j["train"] = jtrain;

  if (report.test_confusion.k_classes > 0) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < report.test_confusion.k_classes; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < report.test_confusion.k_classes; ++c) {
        row.push_back(report.test_confusion.at(r, c));
      }
      rows.push_back(row);
    }
    j["test_confusion"] = rows;
  }

  j["final_params"] = report.final_params;

  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) throw io_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw io_error("read failed: " + path);
  return ss.str();
}

}  // namespace vpc
