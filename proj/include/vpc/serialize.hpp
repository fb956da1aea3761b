#pragma once

#include <string>
#include <vector>

#include "vpc/datagen.hpp"
#include "vpc/readout.hpp"
#include "vpc/training.hpp"

namespace vpc {

// Decimal form of a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

// "epoch,train_loss,val_loss" rows, epochs numbered from 1.
std::string loss_curve_csv(const std::vector<double>& train_loss,
                           const std::vector<double>& val_loss);

// K rows of K comma-separated integers.
std::string confusion_csv(const ConfusionMatrix& cm);

// Report JSON: metrics, echoed configuration, dataset hash, final params.
// Deterministic: keys are sorted and wall time is deliberately excluded so
// identical runs serialize to identical bytes.
std::string report_json(const std::string& experiment, std::uint64_t run_seed,
                        const GenSpec& gen, const SplitSpec& split,
                        const TrainConfig& train_cfg,
                        const std::string& circuit_text,
                        const std::string& data_hash, const TrainReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace vpc
