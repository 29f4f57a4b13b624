// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace mwgi {

/// Orbit of the cubic map x -> a*x^3 + (1-a)*x, which maps [-1,1] into
/// itself for every a in (0,4]. At a = 4 it is the chaotic Chebyshev cubic
/// 4x^3 - 3x.
struct ChaoticSequence {
  double a = 4.0;
  double x0 = 0.0;
  std::vector<double> values;
};

enum class CarrierMode { constant_frequency, linear_chirp };

struct CarrierSpec {
  double center_frequency = 1.0e9; // Hz
  double phase = 0.0;              // radians
  double bandwidth = 2.0e9;        // Hz
  double pulse_width = 3.0e-6;     // seconds
  CarrierMode mode = CarrierMode::linear_chirp;

  // bandwidth / pulse_width in chirp mode, 0 otherwise.
  double chirp_rate() const;

  void validate() const;
};

/// Uniformly sampled complex time series.
struct SampledWaveform {
  std::vector<std::complex<double>> samples;
  double sample_interval = 0.0; // seconds
  double start_time = 0.0;      // seconds
};

// Single iteration of the cubic map. Throws std::domain_error when a is
// outside (0,4] or x outside [-1,1].
double cubic_map_step(double a, double x);

// Orbit of length n starting at x0 (values[0] = x0).
ChaoticSequence generate_sequence(double a, double x0, std::size_t n);

// Deterministic initial values in (-1,1), one per antenna, rejecting the
// fixed points {-1, 0, 1} by exact comparison.
std::vector<double> draw_initial_values(std::uint64_t seed, std::size_t count);

// Chaotic amplitude modulation: each orbit value holds for one chip
// (zero-order hold) and multiplies the unit-magnitude carrier
// exp(j(2*pi*f*t + pi*gamma*t^2 + phase)). The waveform spans one pulse
// width starting at t = 0. Throws std::invalid_argument when the sequence
// is shorter than ceil(pulse_width / chip_interval) chips.
SampledWaveform modulate(const ChaoticSequence& seq, const CarrierSpec& carrier,
                         double chip_interval, double sample_interval);

// Deterministic stream splitting for per-(antenna, pulse) sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

} // namespace mwgi
