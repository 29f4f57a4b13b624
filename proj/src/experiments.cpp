// SPDX-License-Identifier: Apache-2.0
#include "mwgi/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "mwgi/coherence.hpp"
#include "mwgi/io.hpp"

namespace mwgi {

namespace {

namespace fs = std::filesystem;

std::ofstream open_summary(const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::ofstream out(out_dir / "summary.txt");
  if (!out)
    throw std::runtime_error("cannot write summary in " + out_dir.string());
  return out;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

ForwardOptions forward_options(const ExperimentConfig& cfg) {
  ForwardOptions opts;
  opts.sim_rate = cfg.sim_rate;
  opts.max_pulses = cfg.max_pulses;
  return opts;
}

std::size_t detection_count(const ExperimentConfig& cfg) {
  return cfg.n_detections > 0
             ? cfg.n_detections
             : static_cast<std::size_t>(cfg.scene_rows) * cfg.scene_cols;
}

double mean_off_peak(const std::vector<double>& corr) {
  if (corr.size() < 2) return 0.0;
  return std::accumulate(corr.begin() + 1, corr.end(), 0.0) /
         static_cast<double>(corr.size() - 1);
}

// Illuminating field time series at the boresight pixel, one sample per
// detection instant.
SampledWaveform boresight_series(const ExperimentConfig& cfg,
                                 const ArrayGeometry& geometry,
                                 double spacing, std::size_t n) {
  const Scene point = Scene::zeros(1, 1, cfg.pixel_size);
  const double t0 = earliest_detection_time(point, geometry);
  std::vector<double> times(n);
  for (std::size_t k = 0; k < n; ++k)
    times[k] = t0 + static_cast<double>(k) * spacing;
  const Eigen::MatrixXcd fields = compute_field_matrix(
      point, geometry, cfg.carrier, times, cfg.seed, forward_options(cfg));
  SampledWaveform wf;
  wf.sample_interval = spacing;
  wf.start_time = t0;
  wf.samples.assign(fields.col(0).data(), fields.col(0).data() + fields.rows());
  return wf;
}

struct SolveOutcome {
  ReconstructionResult result;
  bool fell_back = false;
};

SolveOutcome solve_with(const Reconstructor& rec, const ExperimentConfig& cfg,
                        const Eigen::VectorXcd& received) {
  SolveOutcome out;
  switch (cfg.solver) {
    case SolverMethod::direct:
      try {
        out.result = rec.direct(received, cfg.condition_ceiling);
      } catch (const IllConditionedError&) {
        out.result = rec.least_squares(received);
        out.fell_back = true;
      }
      break;
    case SolverMethod::least_squares:
      out.result = rec.least_squares(received);
      break;
    case SolverMethod::gradient_projection:
      out.result = rec.gradient_projection(cfg.gp, received);
      break;
  }
  return out;
}

} // namespace

void run_sampling_experiment(const ExperimentConfig& cfg,
                             const fs::path& out_dir, bool dump_sequences) {
  cfg.validate();
  const ArrayGeometry geometry =
      build_square_array(cfg.n_tx, cfg.array_side, cfg.standoff);
  const std::size_t n = std::max<std::size_t>(detection_count(cfg),
                                              cfg.autocorr_lags + 2);

  const double gi_spacing = 1.0 / cfg.sampling_frequency;
  const double nyq_spacing = 1.0 / cfg.nyquist_rate;

  auto run_rate = [&](double spacing, const std::string& name) {
    const SampledWaveform series = boresight_series(cfg, geometry, spacing, n);
    const std::vector<double> corr = autocorrelate(series, cfg.autocorr_lags);
    std::vector<double> lag_s(corr.size());
    for (std::size_t k = 0; k < corr.size(); ++k)
      lag_s[k] = static_cast<double>(k) * spacing;
    write_table_csv(out_dir / (name + ".csv"), "lag_s", "correlation", lag_s,
                    corr);
    return mean_off_peak(corr);
  };

  fs::create_directories(out_dir);
  const double gi_mean = run_rate(gi_spacing, "autocorr_gi_rate");
  const double nyq_mean = run_rate(nyq_spacing, "autocorr_nyquist_rate");

  if (dump_sequences) {
    const double chip = 1.0 / cfg.carrier.bandwidth;
    for (int i = 0; i < cfg.n_tx; ++i) {
      const std::vector<double> chips = pulse_chips(
          cfg.carrier, chip, cfg.seed, static_cast<std::size_t>(i), 0);
      std::ofstream out(out_dir / ("tx" + std::to_string(i) + "_sequence.csv"));
      for (double v : chips) out << format_double(v) << '\n';
    }
  }

  auto summary = open_summary(out_dir);
  summary << "sampling experiment\n"
          << "gi_rate_hz = " << format_double(cfg.sampling_frequency) << '\n'
          << "nyquist_rate_hz = " << format_double(cfg.nyquist_rate) << '\n'
          << "n_detections = " << n << '\n'
          << "mean_off_peak_gi = " << format_double(gi_mean) << '\n'
          << "mean_off_peak_nyquist = " << format_double(nyq_mean) << '\n'
          << "gi_rate_more_independent = "
          << (gi_mean < nyq_mean ? "yes" : "no") << '\n';
}

void run_spatial_experiment(const ExperimentConfig& cfg,
                            const fs::path& out_dir) {
  cfg.validate();
  const Scene grid =
      Scene::zeros(cfg.spatial_rows, cfg.spatial_cols, cfg.spatial_pixel_size);
  const int ref_row = cfg.spatial_rows / 2;
  const int ref_col = cfg.spatial_cols / 2;
  const double spacing = 1.0 / cfg.sampling_frequency;

  fs::create_directories(out_dir);
  std::vector<double> sides, widths;
  auto summary = open_summary(out_dir);
  summary << "spatial correlation experiment\n"
          << "grid = " << cfg.spatial_rows << "x" << cfg.spatial_cols << " @ "
          << format_double(cfg.spatial_pixel_size) << " m\n"
          << "detections = " << cfg.spatial_detections << '\n';

  for (double b : cfg.array_side_sweep) {
    const ArrayGeometry geometry =
        build_square_array(cfg.n_tx, b, cfg.standoff);
    const Eigen::MatrixXd map = spatial_correlation_map(
        geometry, cfg.carrier, grid, ref_row, ref_col, cfg.spatial_detections,
        cfg.seed, spacing, forward_options(cfg));

    const std::string tag = "b" + label(b);
    write_matrix_csv(out_dir / ("map_" + tag + ".csv"), map);
    write_pgm(out_dir / ("map_" + tag + ".pgm"), map);

    std::vector<double> pos(map.cols()), profile(map.cols());
    for (int q = 0; q < map.cols(); ++q) {
      pos[q] = (q - ref_col) * cfg.spatial_pixel_size;
      profile[q] = map(ref_row, q);
    }
    write_table_csv(out_dir / ("profile_" + tag + ".csv"), "position_m",
                    "correlation", pos, profile);

    double width = std::numeric_limits<double>::quiet_NaN();
    try {
      width = correlation_width(map, cfg.spatial_pixel_size, ref_row, ref_col);
      summary << "width_m[" << tag << "] = " << format_double(width) << '\n';
    } catch (const std::runtime_error& e) {
      summary << "width_m[" << tag << "] = unresolved (" << e.what() << ")\n";
    }
    sides.push_back(b);
    widths.push_back(width);
  }

  write_table_csv(out_dir / "width_vs_b.csv", "array_side_m", "width_m", sides,
                  widths);

  bool decreasing = true;
  for (std::size_t k = 1; k < widths.size(); ++k)
    if (!(widths[k] < widths[k - 1])) decreasing = false;
  if (widths.size() > 1)
    summary << "width_strictly_decreasing = " << (decreasing ? "yes" : "no")
            << '\n';
}

void run_reconstruction_experiment(const ExperimentConfig& cfg,
                                   const fs::path& out_dir) {
  cfg.validate();
  const Scene scene = cfg.make_scene();
  const ArrayGeometry geometry =
      build_square_array(cfg.n_tx, cfg.array_side, cfg.standoff);
  const SamplingPlan plan = SamplingPlan::for_bandwidth(
      cfg.carrier.bandwidth, cfg.sampling_frequency, detection_count(cfg));

  const MeasurementSet ms = build_measurement_set(
      scene, geometry, cfg.carrier, plan, cfg.seed, forward_options(cfg));
  const Reconstructor rec(ms);

  fs::create_directories(out_dir);
  save_scene(out_dir / "truth.csv", scene);
  write_pgm(out_dir / "truth.pgm", scene.coefficients);

  auto summary = open_summary(out_dir);
  summary << "reconstruction experiment\n"
          << "solver = " << to_string(cfg.solver) << '\n'
          << "n_detections = " << plan.n_detections << '\n';

  std::vector<double> snrs, errors;
  auto run_one = [&](const Eigen::VectorXcd& received,
                     const std::string& tag) {
    const SolveOutcome out = solve_with(rec, cfg, received);
    const ReconstructionResult& r = out.result;
    write_matrix_csv(out_dir / ("estimate_" + tag + ".csv"), r.coefficients);
    write_pgm(out_dir / ("estimate_" + tag + ".pgm"), r.coefficients);
    const double err = mse(r.coefficients, scene.coefficients);
    summary << "run " << tag << ": method=" << to_string(r.method)
            << (out.fell_back ? " (ill-conditioned, least-squares fallback)"
                              : "")
            << " iterations=" << r.iterations
            << " residual=" << format_double(r.residual_norm);
    if (r.condition_estimate)
      summary << " condition=" << format_double(*r.condition_estimate);
    summary << " mse=" << format_double(err) << '\n';
    return err;
  };

  if (cfg.include_noiseless) run_one(ms.received, "noiseless");
  for (double snr : cfg.snr_db_list) {
    const MeasurementSet noisy = add_noise(ms, snr, cfg.noise_seeds.front());
    snrs.push_back(snr);
    errors.push_back(run_one(noisy.received, "snr" + label(snr)));
  }
  write_table_csv(out_dir / "mse_vs_snr.csv", "snr_db", "mse", snrs, errors);
}

void run_mse_sweep(const ExperimentConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  const Scene scene = cfg.make_scene();
  const ArrayGeometry geometry =
      build_square_array(cfg.n_tx, cfg.array_side, cfg.standoff);
  const SamplingPlan plan = SamplingPlan::for_bandwidth(
      cfg.carrier.bandwidth, cfg.sampling_frequency, detection_count(cfg));

  const MeasurementSet ms = build_measurement_set(
      scene, geometry, cfg.carrier, plan, cfg.seed, forward_options(cfg));
  const Reconstructor rec(ms);

  fs::create_directories(out_dir);
  auto summary = open_summary(out_dir);
  summary << "mse sweep\n"
          << "solver = " << to_string(cfg.solver) << '\n'
          << "noise_seeds = " << cfg.noise_seeds.size() << '\n';

  std::vector<double> snrs, mean_errors;
  for (double snr : cfg.snr_db_list) {
    double acc = 0.0;
    for (std::uint64_t seed : cfg.noise_seeds) {
      const MeasurementSet noisy = add_noise(ms, snr, seed);
      const SolveOutcome out = solve_with(rec, cfg, noisy.received);
      acc += mse(out.result.coefficients, scene.coefficients);
    }
    const double mean_err = acc / static_cast<double>(cfg.noise_seeds.size());
    snrs.push_back(snr);
    mean_errors.push_back(mean_err);
    summary << "snr_db=" << label(snr)
            << " mean_mse=" << format_double(mean_err) << '\n';
  }
  write_table_csv(out_dir / "mse_vs_snr.csv", "snr_db", "mean_mse", snrs,
                  mean_errors);

  bool monotone = true;
  for (std::size_t k = 1; k < mean_errors.size(); ++k)
    if (mean_errors[k] > mean_errors[k - 1]) monotone = false;
  summary << "mse_non_increasing = " << (monotone ? "yes" : "no") << '\n';
}

void run_coherence_report(const ExperimentConfig& cfg,
                          const fs::path& out_dir) {
  cfg.validate();
  const ArrayGeometry geometry =
      build_square_array(cfg.n_tx, cfg.array_side, cfg.standoff);
  const CoherenceReport rep = make_coherence_report(cfg.carrier, geometry);

  fs::create_directories(out_dir);
  std::ofstream out(out_dir / "coherence_report.txt");
  out << "bandwidth_hz = " << format_double(cfg.carrier.bandwidth) << '\n'
      << "coherence_time_s = " << format_double(rep.coherence_time) << '\n'
      << "center_frequency_hz = " << format_double(cfg.carrier.center_frequency)
      << '\n'
      << "wavelength_m = " << format_double(rep.wavelength) << '\n'
      << "standoff_m = " << format_double(geometry.standoff) << '\n'
      << "array_side_m = " << format_double(geometry.array_side) << '\n'
      << "coherence_size_lower_m = " << format_double(rep.dc_lower) << '\n'
      << "coherence_size_upper_m = " << format_double(rep.dc_upper) << '\n';
}

} // namespace mwgi
