// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mwgi/experiments.hpp"
#include "mwgi/io.hpp"

using namespace mwgi;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.carrier.pulse_width = 1.0e-6;
  cfg.scene_rows = 8;
  cfg.scene_cols = 8;
  cfg.targets = {{1, 2, 1, 2, 1.0}, {5, 6, 5, 6, 1.0}};
  cfg.n_detections = 64;
  cfg.autocorr_lags = 30;
  cfg.spatial_rows = 15;
  cfg.spatial_cols = 15;
  cfg.spatial_pixel_size = 0.05;
  cfg.spatial_detections = 120;
  cfg.array_side_sweep = {0.5, 4.0};
  cfg.snr_db_list = {0.0, 30.0};
  cfg.noise_seeds = {1, 2};
  return cfg;
}

// Dense emitter ring and short carrier wavelength so the 8x8 grid sits above
// the diffraction limit and the linear system is numerically invertible.
ExperimentConfig recon_config() {
  ExperimentConfig cfg = small_config();
  cfg.n_tx = 16;
  cfg.carrier.center_frequency = 1.0e10;
  cfg.sim_rate = 3.2e10;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool dirs_identical(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> rel;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), a));
  if (rel.empty()) return false;
  for (const auto& r : rel) {
    if (!fs::exists(b / r)) return false;
    if (slurp(a / r) != slurp(b / r)) return false;
  }
  return true;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mwgi_exp_" + name);
  fs::remove_all(p);
  return p;
}

} // namespace

TEST_CASE("sampling experiment output and rate comparison") {
  auto cfg = small_config();
  const fs::path out = scratch("sampling");
  run_sampling_experiment(cfg, out, /*dump_sequences=*/true);

  CHECK(fs::exists(out / "autocorr_gi_rate.csv"));
  CHECK(fs::exists(out / "autocorr_nyquist_rate.csv"));
  CHECK(fs::exists(out / "tx0_sequence.csv"));
  const std::string summary = slurp(out / "summary.txt");
  CHECK(summary.find("gi_rate_more_independent = yes") != std::string::npos);
}

TEST_CASE("spatial experiment emits per-side maps and widths") {
  auto cfg = small_config();
  const fs::path out = scratch("spatial");
  run_spatial_experiment(cfg, out);

  for (const char* tag : {"b0.5", "b4"}) {
    CHECK(fs::exists(out / ("map_" + std::string(tag) + ".csv")));
    CHECK(fs::exists(out / ("map_" + std::string(tag) + ".pgm")));
    CHECK(fs::exists(out / ("profile_" + std::string(tag) + ".csv")));
  }
  CHECK(fs::exists(out / "width_vs_b.csv"));

  SUBCASE("single-side config produces a single map") {
    auto one = cfg;
    one.array_side_sweep = {1.0};
    const fs::path out1 = scratch("spatial_one");
    run_spatial_experiment(one, out1);
    CHECK(fs::exists(out1 / "map_b1.csv"));
    CHECK_FALSE(fs::exists(out1 / "map_b4.csv"));
  }
}

TEST_CASE("reconstruction experiment recovers the noiseless scene") {
  auto cfg = recon_config();
  const fs::path out = scratch("reconstruct");
  run_reconstruction_experiment(cfg, out);

  CHECK(fs::exists(out / "truth.pgm"));
  CHECK(fs::exists(out / "estimate_noiseless.csv"));
  CHECK(fs::exists(out / "mse_vs_snr.csv"));

  const Eigen::MatrixXd truth = read_matrix_csv(out / "truth.csv");
  const Eigen::MatrixXd est = read_matrix_csv(out / "estimate_noiseless.csv");
  CHECK((est - truth).norm() < 1e-6 * truth.norm());
}

TEST_CASE("mse sweep improves with SNR") {
  auto cfg = recon_config();
  const fs::path out = scratch("sweep");
  run_mse_sweep(cfg, out);

  std::ifstream in(out / "mse_vs_snr.csv");
  std::string header, row0, row30;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row0));
  REQUIRE(std::getline(in, row30));
  const double mse0 = std::stod(row0.substr(row0.find(',') + 1));
  const double mse30 = std::stod(row30.substr(row30.find(',') + 1));
  CHECK(mse30 < mse0);
}

TEST_CASE("coherence report values") {
  auto cfg = small_config();
  const fs::path out = scratch("report");
  run_coherence_report(cfg, out);
  const std::string text = slurp(out / "coherence_report.txt");
  CHECK(text.find("coherence_time_s = 5") != std::string::npos);
  CHECK(text.find("e-10") != std::string::npos);
  CHECK(text.find("coherence_size_lower_m") != std::string::npos);
}

TEST_CASE("experiments are byte-identical across reruns") {
  auto cfg = small_config();
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");

  run_sampling_experiment(cfg, a / "sampling");
  run_sampling_experiment(cfg, b / "sampling");
  run_spatial_experiment(cfg, a / "spatial");
  run_spatial_experiment(cfg, b / "spatial");
  run_reconstruction_experiment(cfg, a / "reconstruct");
  run_reconstruction_experiment(cfg, b / "reconstruct");
  run_mse_sweep(cfg, a / "sweep");
  run_mse_sweep(cfg, b / "sweep");

  CHECK(dirs_identical(a, b));
}
