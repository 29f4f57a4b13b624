// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "mwgi/chaos.hpp"

using namespace mwgi;

TEST_CASE("cubic map fixed points and hand-evaluated step") {
  CHECK(cubic_map_step(4.0, 0.0) == 0.0);
  CHECK(cubic_map_step(1.7, 0.0) == 0.0);
  CHECK(cubic_map_step(4.0, 1.0) == 1.0);
  CHECK(cubic_map_step(4.0, 0.5) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("cubic map domain errors") {
  CHECK_THROWS_AS(cubic_map_step(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(cubic_map_step(4.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(cubic_map_step(-1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(cubic_map_step(4.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(cubic_map_step(4.0, -1.0001), std::domain_error);
}

TEST_CASE("orbit generation") {
  SUBCASE("fixed point orbit") {
    auto seq = generate_sequence(4.0, 0.0, 5);
    REQUIRE(seq.values.size() == 5);
    for (double v : seq.values) CHECK(v == 0.0);
  }
  SUBCASE("hand-iterated orbit") {
    auto seq = generate_sequence(4.0, 0.5, 3);
    CHECK(seq.values[0] == 0.5);
    CHECK(seq.values[1] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(seq.values[2] == doctest::Approx(-1.0).epsilon(1e-15));
  }
  SUBCASE("boundedness over a long orbit") {
    auto seq = generate_sequence(4.0, 0.3, 10000);
    for (double v : seq.values) {
      REQUIRE(v >= -1.0);
      REQUIRE(v <= 1.0);
    }
  }
  SUBCASE("bit-for-bit determinism") {
    auto a = generate_sequence(3.7, 0.123, 1000);
    auto b = generate_sequence(3.7, 0.123, 1000);
    CHECK(a.values == b.values);
  }
}

TEST_CASE("orbit boundedness property over random coefficients") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coeff(1e-3, 4.0);
  std::uniform_real_distribution<double> start(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = coeff(rng);
    double x = start(rng);
    for (int k = 0; k < 100000; ++k) {
      x = cubic_map_step(a, x);
      REQUIRE(x >= -1.0);
      REQUIRE(x <= 1.0);
    }
  }
}

namespace {

double cross_correlation_peak(const std::vector<double>& a,
                              const std::vector<double>& b, int max_lag) {
  const int n = static_cast<int>(a.size());
  double na = 0.0, nb = 0.0;
  for (int k = 0; k < n; ++k) {
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  double peak = 0.0;
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const int j = k + lag;
      if (j >= 0 && j < n) acc += a[k] * b[j];
    }
    peak = std::max(peak, std::abs(acc) / std::sqrt(na * nb));
  }
  return peak;
}

} // namespace

TEST_CASE("distinct initial values decorrelate") {
  for (std::uint64_t pair = 0; pair < 20; ++pair) {
    auto x0 = draw_initial_values(1000 + pair, 2);
    REQUIRE(x0[0] != x0[1]);
    auto a = generate_sequence(4.0, x0[0], 1000);
    auto b = generate_sequence(4.0, x0[1], 1000);
    CHECK(cross_correlation_peak(a.values, b.values, 100) < 0.2);
  }
}

TEST_CASE("initial values avoid map fixed points") {
  auto xs = draw_initial_values(42, 1000);
  for (double x : xs) {
    CHECK(x != -1.0);
    CHECK(x != 0.0);
    CHECK(x != 1.0);
    CHECK(x > -1.0);
    CHECK(x < 1.0);
  }
  CHECK(draw_initial_values(42, 1000) == xs);
}

TEST_CASE("chirp rate from Table-II style parameters") {
  CarrierSpec c; // defaults: 1 GHz carrier, 2 GHz bandwidth, 3 us pulse
  CHECK(c.chirp_rate() == doctest::Approx(6.67e14).epsilon(1e-3));
  c.mode = CarrierMode::constant_frequency;
  CHECK(c.chirp_rate() == 0.0);
}

TEST_CASE("modulation") {
  CarrierSpec carrier;
  carrier.pulse_width = 1.0e-7;
  const double chip = 1.0 / carrier.bandwidth;
  const double dt = 1.0 / 8.0e9;
  const std::size_t chips = 250;

  SUBCASE("zero sequence gives zero waveform") {
    ChaoticSequence seq{4.0, 0.0, std::vector<double>(chips, 0.0)};
    auto wf = modulate(seq, carrier, chip, dt);
    for (auto s : wf.samples) CHECK(std::abs(s) == 0.0);
  }
  SUBCASE("unit chip, zero phase, t=0 sample is 1") {
    CarrierSpec cf = carrier;
    cf.mode = CarrierMode::constant_frequency;
    ChaoticSequence seq{4.0, 1.0, std::vector<double>(chips, 1.0)};
    auto wf = modulate(seq, cf, chip, dt);
    CHECK(wf.samples[0].real() == doctest::Approx(1.0));
    CHECK(wf.samples[0].imag() == doctest::Approx(0.0));
  }
  SUBCASE("carrier is unit modulus: |sample| equals |chip| exactly") {
    auto x0 = draw_initial_values(5, 1);
    auto seq = generate_sequence(4.0, x0[0], chips);
    auto wf = modulate(seq, carrier, chip, dt);
    for (std::size_t k = 0; k < wf.samples.size(); ++k) {
      const double t = k * dt;
      auto c = std::min<std::size_t>(static_cast<std::size_t>(t / chip),
                                     chips - 1);
      CHECK(std::abs(wf.samples[k]) ==
            doctest::Approx(std::abs(seq.values[c])).epsilon(1e-12));
    }
  }
  SUBCASE("sequence shorter than the pulse") {
    ChaoticSequence seq{4.0, 0.5, std::vector<double>(10, 0.5)};
    CHECK_THROWS_AS(modulate(seq, carrier, chip, dt), std::invalid_argument);
  }
}
