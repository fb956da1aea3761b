#pragma once

#include <stdexcept>
#include <string>

namespace vpc {

// Size mismatch between a layer, parameter block, state, or index range.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Non-finite or otherwise unusable numeric input.
struct invalid_input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A thread amplitude fell below the pull-back threshold; carries the thread.
struct degenerate_amplitude_error : std::runtime_error {
  int thread;
  degenerate_amplitude_error(int thread_index, double modulus)
      : std::runtime_error("degenerate amplitude on thread " +
                           std::to_string(thread_index) + " (|z| = " +
                           std::to_string(modulus) + " below 1e-12)"),
        thread(thread_index) {}
};

// A snapshot with (near-)zero variance cannot be standardized.
struct constant_snapshot_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested split would leave some class empty in some partition.
struct invalid_split_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Training produced a non-finite loss; carries the epoch where it happened.
struct divergence_error : std::runtime_error {
  int epoch;
  explicit divergence_error(int at_epoch)
      : std::runtime_error("non-finite loss at epoch " +
                           std::to_string(at_epoch)),
        epoch(at_epoch) {}
};

// Unusable run configuration (bad names, out-of-range settings, guards).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File could not be read or written; message names the path.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked quantity exceeded its tolerance (gradient check CLI).
struct tolerance_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vpc
