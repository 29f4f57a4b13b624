// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mwgi/reconstruction.hpp"

using namespace mwgi;

namespace {

// Synthetic measurement set with a controlled random field matrix.
MeasurementSet synthetic_system(int rows, int cols, std::uint64_t seed,
                                const Eigen::VectorXd& delta) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows) * cols;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  MeasurementSet ms;
  ms.scene_rows = rows;
  ms.scene_cols = cols;
  ms.field_matrix.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      ms.field_matrix(r, c) = std::complex<double>(g(rng), g(rng));
  ms.received = ms.field_matrix * delta.cast<std::complex<double>>();
  ms.detection_times.assign(n, 0.0);
  return ms;
}

Eigen::VectorXd random_nonneg(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = uni(rng);
  return v;
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
  Eigen::VectorXd v(m.size());
  for (Eigen::Index p = 0; p < m.rows(); ++p)
    for (Eigen::Index q = 0; q < m.cols(); ++q)
      v(p * m.cols() + q) = m(p, q);
  return v;
}

} // namespace

TEST_CASE("direct solve") {
  SUBCASE("identity system returns the clamped real part") {
    MeasurementSet ms;
    ms.scene_rows = 2;
    ms.scene_cols = 2;
    ms.field_matrix = Eigen::MatrixXcd::Identity(4, 4);
    ms.received.resize(4);
    ms.received << std::complex<double>(1.0, 0.3),
        std::complex<double>(-0.5, 0.0), std::complex<double>(0.25, -2.0),
        std::complex<double>(0.0, 0.0);
    ms.detection_times.assign(4, 0.0);
    auto res = solve_direct(ms);
    CHECK(res.coefficients(0, 0) == 1.0);
    CHECK(res.coefficients(0, 1) == 0.0); // negative clamped
    CHECK(res.coefficients(1, 0) == 0.25);
    CHECK(res.coefficients(1, 1) == 0.0);
    CHECK(res.iterations == 0);
  }
  SUBCASE("round trip on a random nonnegative scene") {
    const Eigen::VectorXd truth = random_nonneg(36, 21);
    auto ms = synthetic_system(6, 6, 5, truth);
    auto res = solve_direct(ms);
    CHECK((flatten(res.coefficients) - truth).norm() < 1e-6 * truth.norm());
    CHECK(res.residual_norm < 1e-8 * ms.received.norm());
    REQUIRE(res.condition_estimate.has_value());
    CHECK(*res.condition_estimate < 1e6);
  }
  SUBCASE("duplicated row is rejected as ill-conditioned") {
    const Eigen::VectorXd truth = random_nonneg(16, 2);
    auto ms = synthetic_system(4, 4, 9, truth);
    ms.field_matrix.row(3) = ms.field_matrix.row(2);
    ms.received = ms.field_matrix * truth.cast<std::complex<double>>();
    CHECK_THROWS_AS(solve_direct(ms), IllConditionedError);
  }
  SUBCASE("non-square system is rejected") {
    MeasurementSet ms;
    ms.scene_rows = 2;
    ms.scene_cols = 2;
    ms.field_matrix = Eigen::MatrixXcd::Ones(3, 4);
    ms.received = Eigen::VectorXcd::Ones(3);
    ms.detection_times.assign(3, 0.0);
    CHECK_THROWS_AS(solve_direct(ms), std::invalid_argument);
  }
}

TEST_CASE("least squares solve") {
  const Eigen::VectorXd truth = random_nonneg(25, 31);
  auto ms = synthetic_system(5, 5, 13, truth);

  SUBCASE("matches direct on a square well-conditioned system") {
    auto d = solve_direct(ms);
    auto ls = solve_least_squares(ms);
    CHECK((flatten(ls.coefficients) - flatten(d.coefficients)).norm() <
          1e-8 * flatten(d.coefficients).norm());
  }
  SUBCASE("duplicated measurements change nothing") {
    MeasurementSet doubled = ms;
    doubled.field_matrix.resize(50, 25);
    doubled.field_matrix << ms.field_matrix, ms.field_matrix;
    doubled.received.resize(50);
    doubled.received << ms.received, ms.received;
    doubled.detection_times.assign(50, 0.0);
    auto a = solve_least_squares(ms);
    auto b = solve_least_squares(doubled);
    CHECK((flatten(a.coefficients) - flatten(b.coefficients)).norm() <
          1e-8 * flatten(a.coefficients).norm());
  }
  SUBCASE("zero received gives the zero minimum-norm solution") {
    MeasurementSet zero = ms;
    zero.received.setZero();
    auto res = solve_least_squares(zero);
    CHECK(res.coefficients.isZero());
  }
}

TEST_CASE("gradient projection") {
  GPConfig tight;
  tight.tolerance = 1e-10;

  SUBCASE("agrees with direct on a noiseless square system") {
    const Eigen::VectorXd truth = random_nonneg(25, 3);
    auto ms = synthetic_system(5, 5, 23, truth);
    auto d = solve_direct(ms);
    auto gp = solve_gradient_projection(ms, tight);
    CHECK((flatten(gp.coefficients) - flatten(d.coefficients)).norm() <
          1e-4 * flatten(d.coefficients).norm());
  }
  SUBCASE("objective is non-increasing across accepted iterations") {
    const Eigen::VectorXd truth = random_nonneg(16, 4);
    auto ms = synthetic_system(4, 4, 29, truth);
    auto gp = solve_gradient_projection(ms, tight);
    REQUIRE(gp.objective_history.size() >= 2);
    for (std::size_t k = 1; k < gp.objective_history.size(); ++k)
      CHECK(gp.objective_history[k] <= gp.objective_history[k - 1]);
  }
  SUBCASE("zero received finishes immediately at zero") {
    MeasurementSet ms = synthetic_system(3, 3, 1, random_nonneg(9, 1));
    ms.received.setZero();
    auto gp = solve_gradient_projection(ms, tight);
    CHECK(gp.iterations == 0);
    CHECK(gp.coefficients.isZero());
    CHECK(gp.converged);
  }
  SUBCASE("dominant l1 weight drives the solution to zero") {
    const Eigen::VectorXd truth = random_nonneg(9, 6);
    auto ms = synthetic_system(3, 3, 37, truth);
    GPConfig heavy = tight;
    heavy.regularization = 1e9;
    auto gp = solve_gradient_projection(ms, heavy);
    CHECK(gp.coefficients.isZero());
  }
  SUBCASE("config validation") {
    GPConfig bad;
    bad.tolerance = 0.0;
    MeasurementSet ms = synthetic_system(2, 2, 1, random_nonneg(4, 1));
    CHECK_THROWS_AS(solve_gradient_projection(ms, bad), std::invalid_argument);
  }
}

TEST_CASE("all solvers return nonnegative coefficients under noise") {
  const Eigen::VectorXd truth = random_nonneg(16, 8);
  auto ms = synthetic_system(4, 4, 41, truth);
  auto noisy = add_noise(ms, 0.0, 77);
  CHECK((solve_direct(noisy).coefficients.array() >= 0.0).all());
  CHECK((solve_least_squares(noisy).coefficients.array() >= 0.0).all());
  GPConfig cfg;
  CHECK((solve_gradient_projection(noisy, cfg).coefficients.array() >= 0.0)
            .all());
}

TEST_CASE("mse scoring") {
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(4, 4);
  Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(4, 4);
  CHECK(mse(ones, ones) == 0.0);
  CHECK(mse(zeros, ones) == 1.0);
  CHECK(mse(2.0 * ones, ones) == 0.0); // scale-invariant by normalization
  CHECK_THROWS_AS(mse(ones, Eigen::MatrixXd::Ones(3, 4)),
                  std::invalid_argument);
}

TEST_CASE("mse improves with SNR on a synthetic scene") {
  Eigen::MatrixXd truth = Eigen::MatrixXd::Zero(5, 5);
  truth.block(1, 1, 2, 2).setOnes();
  auto ms = synthetic_system(5, 5, 51, flatten(truth));
  Reconstructor rec(ms);
  auto err_at = [&](double snr) {
    double acc = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto noisy = add_noise(ms, snr, 100 + seed);
      acc += mse(rec.least_squares(noisy.received).coefficients, truth);
    }
    return acc / 5.0;
  };
  CHECK(err_at(30.0) < err_at(0.0));
}
