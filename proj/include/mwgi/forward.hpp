// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "mwgi/chaos.hpp"
#include "mwgi/geometry.hpp"

namespace mwgi {

/// Detection timing. The GI requirement is sample_interval >= coherence_time;
/// strictness() records how far beyond the minimum the plan sits.
struct SamplingPlan {
  double sample_interval = 2.0e-9; // seconds between detections
  std::size_t n_detections = 0;
  double coherence_time = 0.5e-9; // 1/bandwidth

  static SamplingPlan for_bandwidth(double bandwidth, double sampling_frequency,
                                    std::size_t n_detections);

  double strictness() const { return sample_interval / coherence_time; }
  void validate() const;
};

struct ForwardOptions {
  double sim_rate = 8.0e9;    // internal synthesis rate, Hz
  double chip_interval = 0.0; // seconds; 0 -> 1/bandwidth
  std::size_t max_pulses = 64;
  bool spherical_spreading = false; // 1/r amplitude decay on both legs
};

/// The linear measurement system R = rho * E * delta of one acquisition.
/// field_matrix row n holds the illuminating field at every pixel at
/// detection time n, pixels flattened row-major.
struct MeasurementSet {
  Eigen::MatrixXcd field_matrix;
  Eigen::VectorXcd received;
  double rho = 1.0;
  std::vector<double> detection_times;
  std::optional<double> snr_db; // none = noiseless
  int scene_rows = 0;
  int scene_cols = 0;
};

/// Fine-rate pulse-train waveforms, one per transmitter. Pulses are
/// contiguous (no dead time); each pulse carries fresh chaotic chips
/// sub-seeded from the master seed.
struct TransmitterBank {
  std::vector<SampledWaveform> waveforms;
};

TransmitterBank synthesize_transmitters(std::size_t n_tx,
                                        const CarrierSpec& carrier,
                                        double chip_interval, double sim_rate,
                                        double duration, std::uint64_t seed);

// Chaotic chips of one (transmitter, pulse) pair, exactly as used by
// synthesize_transmitters.
std::vector<double> pulse_chips(const CarrierSpec& carrier,
                                double chip_interval, std::uint64_t seed,
                                std::size_t tx, std::size_t pulse);

// Superposed field at a pixel: sum over transmitters of S_i(t - tau_i) with
// tau_i the two-way delay tx_i -> pixel -> rx. Nearest-sample lookup at the
// synthesis rate. Throws std::out_of_range when any delayed time falls
// outside a waveform's support.
std::complex<double> field_at_pixel(const TransmitterBank& bank,
                                    const ArrayGeometry& geometry,
                                    const Vec3& pixel, double t,
                                    bool spherical_spreading = false);

// Field matrix over a pixel grid at the given detection times.
Eigen::MatrixXcd compute_field_matrix(const Scene& grid,
                                      const ArrayGeometry& geometry,
                                      const CarrierSpec& carrier,
                                      const std::vector<double>& times,
                                      std::uint64_t seed,
                                      const ForwardOptions& options = {});

// First detection instant that clears every propagation delay, so all
// waveform lookups stay inside the synthesized support.
double earliest_detection_time(const Scene& grid, const ArrayGeometry& geometry);

MeasurementSet build_measurement_set(const Scene& scene,
                                     const ArrayGeometry& geometry,
                                     const CarrierSpec& carrier,
                                     const SamplingPlan& plan,
                                     std::uint64_t seed,
                                     const ForwardOptions& options = {});

// Circularly-symmetric complex Gaussian noise on the received vector only;
// variance set so 10*log10(mean|R|^2 / var) = snr_db. Per-index noise
// streams, so results do not depend on evaluation order.
MeasurementSet add_noise(const MeasurementSet& ms, double snr_db,
                         std::uint64_t seed);

// Normalized autocorrelation magnitude at integer lags 0..max_lag
// (value 1 at lag 0; no mean removal, so a constant signal stays at 1).
std::vector<double> autocorrelate(const SampledWaveform& signal,
                                  std::size_t max_lag);

} // namespace mwgi
