// SPDX-License-Identifier: Apache-2.0
#include "mwgi/forward.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mwgi {

SamplingPlan SamplingPlan::for_bandwidth(double bandwidth,
                                         double sampling_frequency,
                                         std::size_t n_detections) {
  if (!(bandwidth > 0.0))
    throw std::invalid_argument("bandwidth must be positive");
  if (!(sampling_frequency > 0.0))
    throw std::invalid_argument("sampling_frequency must be positive");
  SamplingPlan plan;
  plan.sample_interval = 1.0 / sampling_frequency;
  plan.coherence_time = 1.0 / bandwidth;
  plan.n_detections = n_detections;
  plan.validate();
  return plan;
}

void SamplingPlan::validate() const {
  if (!(sample_interval > 0.0) || !(coherence_time > 0.0))
    throw std::invalid_argument("sampling plan intervals must be positive");
  if (n_detections < 1)
    throw std::invalid_argument("need at least one detection");
  if (sample_interval < coherence_time)
    throw std::invalid_argument(
        "GI sampling requires sample_interval >= coherence_time");
}

namespace {

double draw_x0(std::uint64_t sub_seed) {
  std::mt19937_64 rng(sub_seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double x;
  do {
    x = uni(rng);
  } while (x == -1.0 || x == 0.0 || x == 1.0);
  return x;
}

std::complex<double> lookup(const SampledWaveform& wf, double t) {
  const auto idx = std::llround((t - wf.start_time) / wf.sample_interval);
  if (idx < 0 || idx >= static_cast<long long>(wf.samples.size()))
    throw std::out_of_range("time outside synthesized waveform support");
  return wf.samples[static_cast<std::size_t>(idx)];
}

} // namespace

std::vector<double> pulse_chips(const CarrierSpec& carrier,
                                double chip_interval, std::uint64_t seed,
                                std::size_t tx, std::size_t pulse) {
  carrier.validate();
  if (!(chip_interval > 0.0))
    throw std::invalid_argument("chip_interval must be positive");
  const auto chips_per_pulse = static_cast<std::size_t>(
      std::ceil(carrier.pulse_width / chip_interval * (1.0 - 1e-12)));
  return generate_sequence(4.0, draw_x0(mix_seed(seed, tx, pulse)),
                           chips_per_pulse)
      .values;
}

TransmitterBank synthesize_transmitters(std::size_t n_tx,
                                        const CarrierSpec& carrier,
                                        double chip_interval, double sim_rate,
                                        double duration, std::uint64_t seed) {
  carrier.validate();
  if (!(chip_interval > 0.0) || !(sim_rate > 0.0) || !(duration > 0.0))
    throw std::invalid_argument("synthesis parameters must be positive");

  const double dt = 1.0 / sim_rate;
  const double tp = carrier.pulse_width;
  const auto chips_per_pulse = static_cast<std::size_t>(
      std::ceil(tp / chip_interval * (1.0 - 1e-12)));
  const auto n_pulses =
      static_cast<std::size_t>(std::floor(duration / tp)) + 1;
  const auto n_samples =
      static_cast<std::size_t>(std::ceil(duration / dt)) + 1;
  const double gamma = carrier.chirp_rate();
  const double two_pi_f = 2.0 * M_PI * carrier.center_frequency;

  TransmitterBank bank;
  bank.waveforms.resize(n_tx);
  for (std::size_t i = 0; i < n_tx; ++i) {
    // fresh chips per pulse, sub-seeded so the stream is order-independent
    std::vector<std::vector<double>> chips(n_pulses);
    for (std::size_t k = 0; k < n_pulses; ++k)
      chips[k] = pulse_chips(carrier, chip_interval, seed, i, k);

    SampledWaveform& wf = bank.waveforms[i];
    wf.sample_interval = dt;
    wf.start_time = 0.0;
    wf.samples.resize(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
      const double t = static_cast<double>(s) * dt;
      auto pulse = static_cast<std::size_t>(t / tp);
      pulse = std::min(pulse, n_pulses - 1);
      const double tl = t - static_cast<double>(pulse) * tp;
      auto chip = static_cast<std::size_t>(tl / chip_interval);
      chip = std::min(chip, chips_per_pulse - 1);
      const double phase =
          two_pi_f * tl + M_PI * gamma * tl * tl + carrier.phase;
      wf.samples[s] = chips[pulse][chip] *
                      std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return bank;
}

std::complex<double> field_at_pixel(const TransmitterBank& bank,
                                    const ArrayGeometry& geometry,
                                    const Vec3& pixel, double t,
                                    bool spherical_spreading) {
  if (bank.waveforms.size() != geometry.tx_positions.size())
    throw std::invalid_argument("one waveform per transmitter required");
  std::complex<double> field(0.0, 0.0);
  for (std::size_t i = 0; i < bank.waveforms.size(); ++i) {
    const Vec3& tx = geometry.tx_positions[i];
    const double tau = two_way_delay(tx, pixel, geometry.rx_position);
    std::complex<double> s = lookup(bank.waveforms[i], t - tau);
    if (spherical_spreading) {
      const double d1 = (tx - pixel).norm();
      const double d2 = (pixel - geometry.rx_position).norm();
      if (d1 > 0.0 && d2 > 0.0) s /= d1 * d2;
    }
    field += s;
  }
  return field;
}

double earliest_detection_time(const Scene& grid,
                               const ArrayGeometry& geometry) {
  double max_tau = 0.0;
  for (int p = 0; p < grid.rows; ++p)
    for (int q = 0; q < grid.cols; ++q) {
      const Vec3 c = pixel_center(grid, p, q);
      for (const Vec3& tx : geometry.tx_positions)
        max_tau =
            std::max(max_tau, two_way_delay(tx, c, geometry.rx_position));
    }
  return max_tau;
}

Eigen::MatrixXcd compute_field_matrix(const Scene& grid,
                                      const ArrayGeometry& geometry,
                                      const CarrierSpec& carrier,
                                      const std::vector<double>& times,
                                      std::uint64_t seed,
                                      const ForwardOptions& options) {
  if (times.empty()) throw std::invalid_argument("no detection times");
  const double chip =
      options.chip_interval > 0.0 ? options.chip_interval : 1.0 / carrier.bandwidth;
  const double dt = 1.0 / options.sim_rate;
  const double duration = times.back() + 2.0 * dt;

  const auto pulses_needed = static_cast<std::size_t>(
      std::floor(duration / carrier.pulse_width)) + 1;
  if (pulses_needed > options.max_pulses)
    throw std::runtime_error("detection span exceeds the configured pulse budget");

  const TransmitterBank bank = synthesize_transmitters(
      geometry.tx_positions.size(), carrier, chip, options.sim_rate, duration,
      seed);

  const std::size_t n_tx = geometry.tx_positions.size();
  const Eigen::Index n_pixels =
      static_cast<Eigen::Index>(grid.rows) * grid.cols;
  Eigen::MatrixXcd fields(static_cast<Eigen::Index>(times.size()), n_pixels);

  // delays and spreading factors depend only on the pixel, precompute once
  std::vector<double> delays(static_cast<std::size_t>(n_pixels) * n_tx);
  std::vector<double> gains(static_cast<std::size_t>(n_pixels) * n_tx, 1.0);
  for (int p = 0; p < grid.rows; ++p)
    for (int q = 0; q < grid.cols; ++q) {
      const Vec3 c = pixel_center(grid, p, q);
      const std::size_t col = static_cast<std::size_t>(p) * grid.cols + q;
      for (std::size_t i = 0; i < n_tx; ++i) {
        const Vec3& tx = geometry.tx_positions[i];
        delays[col * n_tx + i] = two_way_delay(tx, c, geometry.rx_position);
        if (options.spherical_spreading) {
          const double d1 = (tx - c).norm();
          const double d2 = (c - geometry.rx_position).norm();
          if (d1 > 0.0 && d2 > 0.0) gains[col * n_tx + i] = 1.0 / (d1 * d2);
        }
      }
    }

  for (std::size_t n = 0; n < times.size(); ++n) {
    const double t = times[n];
    for (Eigen::Index col = 0; col < n_pixels; ++col) {
      std::complex<double> f(0.0, 0.0);
      for (std::size_t i = 0; i < n_tx; ++i) {
        const std::size_t k = static_cast<std::size_t>(col) * n_tx + i;
        f += gains[k] * lookup(bank.waveforms[i], t - delays[k]);
      }
      fields(static_cast<Eigen::Index>(n), col) = f;
    }
  }
  return fields;
}

MeasurementSet build_measurement_set(const Scene& scene,
                                     const ArrayGeometry& geometry,
                                     const CarrierSpec& carrier,
                                     const SamplingPlan& plan,
                                     std::uint64_t seed,
                                     const ForwardOptions& options) {
  scene.validate();
  plan.validate();

  const double t0 = earliest_detection_time(scene, geometry);
  std::vector<double> times(plan.n_detections);
  for (std::size_t n = 0; n < plan.n_detections; ++n)
    times[n] = t0 + static_cast<double>(n) * plan.sample_interval;

  MeasurementSet ms;
  ms.field_matrix =
      compute_field_matrix(scene, geometry, carrier, times, seed, options);
  ms.received = ms.rho * (ms.field_matrix *
                          scene.flattened().cast<std::complex<double>>());
  ms.detection_times = std::move(times);
  ms.scene_rows = scene.rows;
  ms.scene_cols = scene.cols;
  return ms;
}

MeasurementSet add_noise(const MeasurementSet& ms, double snr_db,
                         std::uint64_t seed) {
  if (ms.received.size() == 0 || ms.received.norm() == 0.0)
    throw std::invalid_argument("SNR undefined for an all-zero received vector");

  const double signal_power =
      ms.received.squaredNorm() / static_cast<double>(ms.received.size());
  const double noise_var = signal_power / std::pow(10.0, snr_db / 10.0);
  const double sigma = std::sqrt(0.5 * noise_var); // per real component

  MeasurementSet out = ms;
  out.snr_db = snr_db;
  for (Eigen::Index n = 0; n < out.received.size(); ++n) {
    std::mt19937_64 rng(mix_seed(seed, 0x6e6f697365ULL,
                                 static_cast<std::uint64_t>(n)));
    std::normal_distribution<double> normal(0.0, sigma);
    const double re = normal(rng);
    const double im = normal(rng);
    out.received(n) += std::complex<double>(re, im);
  }
  return out;
}

std::vector<double> autocorrelate(const SampledWaveform& signal,
                                  std::size_t max_lag) {
  const std::size_t n = signal.samples.size();
  if (n <= max_lag)
    throw std::invalid_argument("signal shorter than requested max lag");

  std::vector<double> energy(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    energy[k] = std::norm(signal.samples[k]);
    total += energy[k];
  }
  if (total == 0.0)
    throw std::invalid_argument("autocorrelation undefined for a zero signal");

  // prefix sums so each lag's normalization is O(1)
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + energy[k];

  std::vector<double> out(max_lag + 1);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = 0; k + lag < n; ++k)
      acc += std::conj(signal.samples[k]) * signal.samples[k + lag];
    const double e_head = prefix[n - lag];          // sum |x_k|^2, k < n-lag
    const double e_tail = prefix[n] - prefix[lag];  // sum |x_k|^2, k >= lag
    const double denom = std::sqrt(e_head * e_tail);
    out[lag] = denom > 0.0 ? std::abs(acc) / denom : 0.0;
  }
  return out;
}

} // namespace mwgi
