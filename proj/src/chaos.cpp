// SPDX-License-Identifier: Apache-2.0
#include "mwgi/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mwgi {

double CarrierSpec::chirp_rate() const {
  return mode == CarrierMode::linear_chirp ? bandwidth / pulse_width : 0.0;
}

void CarrierSpec::validate() const {
  if (!(center_frequency > 0.0))
    throw std::invalid_argument("carrier center_frequency must be positive");
  if (!(bandwidth > 0.0))
    throw std::invalid_argument("carrier bandwidth must be positive");
  if (!(pulse_width > 0.0))
    throw std::invalid_argument("carrier pulse_width must be positive");
}

double cubic_map_step(double a, double x) {
  if (!(a > 0.0) || !(a <= 4.0))
    throw std::domain_error("cubic map coefficient must lie in (0, 4]");
  if (!(x >= -1.0) || !(x <= 1.0))
    throw std::domain_error("cubic map state must lie in [-1, 1]");
  double next = a * x * x * x + (1.0 - a) * x;
  // round-off can overshoot the invariant interval by one ulp
  return std::clamp(next, -1.0, 1.0);
}

ChaoticSequence generate_sequence(double a, double x0, std::size_t n) {
  if (n < 1) throw std::invalid_argument("sequence length must be >= 1");
  ChaoticSequence seq;
  seq.a = a;
  seq.x0 = x0;
  seq.values.resize(n);
  seq.values[0] = x0;
  if (!(a > 0.0) || !(a <= 4.0))
    throw std::domain_error("cubic map coefficient must lie in (0, 4]");
  if (!(x0 >= -1.0) || !(x0 <= 1.0))
    throw std::domain_error("cubic map state must lie in [-1, 1]");
  for (std::size_t k = 1; k < n; ++k)
    seq.values[k] = cubic_map_step(a, seq.values[k - 1]);
  return seq;
}

std::vector<double> draw_initial_values(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> out;
  out.reserve(count);
  while (out.size() < count) {
    double x = uni(rng);
    if (x == -1.0 || x == 0.0 || x == 1.0) continue; // map fixed points
    out.push_back(x);
  }
  return out;
}

SampledWaveform modulate(const ChaoticSequence& seq, const CarrierSpec& carrier,
                         double chip_interval, double sample_interval) {
  carrier.validate();
  if (!(sample_interval > 0.0))
    throw std::invalid_argument("sample_interval must be positive");
  if (!(chip_interval >= sample_interval))
    throw std::invalid_argument("chip_interval must be >= sample_interval");

  const auto chips_needed = static_cast<std::size_t>(
      std::ceil(carrier.pulse_width / chip_interval * (1.0 - 1e-12)));
  if (seq.values.size() < chips_needed)
    throw std::invalid_argument("chaotic sequence shorter than the pulse");

  const auto n_samples = static_cast<std::size_t>(
      std::ceil(carrier.pulse_width / sample_interval * (1.0 - 1e-12)));
  const double gamma = carrier.chirp_rate();
  const double two_pi_f = 2.0 * M_PI * carrier.center_frequency;

  SampledWaveform wf;
  wf.sample_interval = sample_interval;
  wf.start_time = 0.0;
  wf.samples.resize(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double t = static_cast<double>(k) * sample_interval;
    auto chip = static_cast<std::size_t>(t / chip_interval);
    chip = std::min(chip, seq.values.size() - 1);
    const double phase = two_pi_f * t + M_PI * gamma * t * t + carrier.phase;
    wf.samples[k] = seq.values[chip] *
                    std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return wf;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over the combined stream id
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a * 0x100000001b3ULL + b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace mwgi
