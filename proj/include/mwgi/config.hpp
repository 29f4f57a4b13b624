// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwgi/chaos.hpp"
#include "mwgi/geometry.hpp"
#include "mwgi/reconstruction.hpp"

namespace mwgi {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Experiment configuration with Table-II style signal defaults. Loaded
/// from flat "key = value" lines grouped under "[section]" headers.
struct ExperimentConfig {
  // [carrier]
  CarrierSpec carrier; // defaults: B=2 GHz, f_c=1 GHz, T_p=3 us, chirp

  // [geometry]
  int n_tx = 4;
  double array_side = 4.0;  // meters
  double standoff = 1.0;    // meters
  std::vector<double> array_side_sweep = {0.5, 1.0, 4.0}; // spatial experiment

  // [scene]
  int scene_rows = 32;
  int scene_cols = 32;
  double pixel_size = 0.015; // meters
  std::string scene_file;    // optional; overrides targets
  std::vector<TargetSpec> targets; // default: two identical 6x6 rectangles

  // [sampling]
  double sampling_frequency = 5.0e8; // Hz (detection rate)
  std::size_t n_detections = 0;      // 0 -> scene_rows * scene_cols
  double sim_rate = 8.0e9;
  std::size_t max_pulses = 64;
  double nyquist_rate = 4.0e9; // comparison rate for the sampling experiment
  std::size_t autocorr_lags = 100;

  // [spatial]
  int spatial_rows = 64;
  int spatial_cols = 64;
  double spatial_pixel_size = 0.024;
  std::size_t spatial_detections = 500;

  // [noise]
  std::vector<double> snr_db_list = {0.0, 10.0, 20.0, 30.0};
  std::vector<std::uint64_t> noise_seeds = {1, 2, 3, 4, 5};
  bool include_noiseless = true;

  // [solver]
  SolverMethod solver = SolverMethod::least_squares;
  GPConfig gp;
  double condition_ceiling = 1.0e10;

  // [output]
  std::string output_dir = "out";
  std::uint64_t seed = 1;

  void validate() const; // ConfigError naming the offending key
  std::vector<TargetSpec> effective_targets() const;
  Scene make_scene() const; // from scene_file or targets
};

// Parses and validates a config file; every omitted key keeps its default.
// Throws ConfigError with "path:line" context on malformed lines.
ExperimentConfig parse_config(const std::string& path);

// Defaults only, no file.
ExperimentConfig default_config();

} // namespace mwgi
