// SPDX-License-Identifier: Apache-2.0
#include "mwgi/config.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mwgi/io.hpp"

namespace mwgi {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

struct RawConfig {
  // "section.key" -> (value, line)
  std::map<std::string, std::pair<std::string, int>> entries;
  std::string path;

  bool has(const std::string& key) const { return entries.count(key) > 0; }

  double number(const std::string& key, double fallback) {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    try {
      std::size_t pos = 0;
      double v = std::stod(it->second.first, &pos);
      if (pos != it->second.first.size()) throw std::invalid_argument("");
      consumed.insert(key);
      return v;
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(it->second.second) +
                        ": key '" + key + "' is not a number: " +
                        it->second.first);
    }
  }

  std::string text(const std::string& key, const std::string& fallback) {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    consumed.insert(key);
    return it->second.first;
  }

  std::vector<double> numbers(const std::string& key,
                              std::vector<double> fallback) {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second.first);
    std::string field;
    while (std::getline(ss, field, ',')) {
      field = trim(field);
      if (field.empty()) continue;
      try {
        out.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(it->second.second) +
                          ": key '" + key + "' has a non-numeric entry: " +
                          field);
      }
    }
    if (out.empty())
      throw ConfigError(path + ": key '" + key + "' is an empty list");
    consumed.insert(key);
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : entries)
      if (!consumed.count(key))
        throw ConfigError(path + ":" + std::to_string(value.second) +
                          ": unknown key '" + key + "'");
  }

  std::set<std::string> consumed;
};

RawConfig read_raw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  RawConfig raw;
  raw.path = path;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": malformed section header: " + line);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    raw.entries[section.empty() ? key : section + "." + key] = {value, lineno};
  }
  return raw;
}

std::vector<TargetSpec> parse_targets(const std::string& text,
                                      const std::string& context) {
  // "r0:r1,c0:c1,coeff ; r0:r1,c0:c1,coeff ; ..."
  std::vector<TargetSpec> out;
  std::stringstream blocks(text);
  std::string block;
  while (std::getline(blocks, block, ';')) {
    block = trim(block);
    if (block.empty()) continue;
    std::stringstream fields(block);
    std::string rows, cols, coeff;
    if (!std::getline(fields, rows, ',') || !std::getline(fields, cols, ',') ||
        !std::getline(fields, coeff, ','))
      throw ConfigError(context + ": target needs 'r0:r1,c0:c1,coeff': " + block);
    auto span = [&](const std::string& s) -> std::pair<int, int> {
      const auto colon = s.find(':');
      if (colon == std::string::npos)
        throw ConfigError(context + ": target extent needs 'lo:hi': " + s);
      return {std::stoi(trim(s.substr(0, colon))),
              std::stoi(trim(s.substr(colon + 1)))};
    };
    TargetSpec t;
    std::tie(t.row0, t.row1) = span(rows);
    std::tie(t.col0, t.col1) = span(cols);
    t.coefficient = std::stod(trim(coeff));
    out.push_back(t);
  }
  return out;
}

void require_positive(double v, const std::string& key) {
  if (!(v > 0.0)) throw ConfigError("key '" + key + "' must be positive");
}

} // namespace

std::vector<TargetSpec> ExperimentConfig::effective_targets() const {
  if (!targets.empty()) return targets;
  // two identical rectangles, diagonal placement, 6x6 on the 32x32 grid
  const int h = std::max(1, (scene_rows * 6 + 16) / 32);
  const int w = std::max(1, (scene_cols * 6 + 16) / 32);
  const int r1 = scene_rows / 4, c1 = scene_cols / 4;
  const int r2 = scene_rows - scene_rows / 4 - h, c2 = scene_cols - scene_cols / 4 - w;
  return {{r1, r1 + h - 1, c1, c1 + w - 1, 1.0},
          {r2, r2 + h - 1, c2, c2 + w - 1, 1.0}};
}

Scene ExperimentConfig::make_scene() const {
  if (!scene_file.empty()) return load_scene(scene_file);
  Scene s = Scene::zeros(scene_rows, scene_cols, pixel_size);
  return paint_targets(std::move(s), effective_targets());
}

void ExperimentConfig::validate() const {
  require_positive(carrier.bandwidth, "carrier.bandwidth_hz");
  require_positive(carrier.center_frequency, "carrier.center_frequency_hz");
  require_positive(carrier.pulse_width, "carrier.pulse_width_s");
  require_positive(array_side, "geometry.array_side_m");
  require_positive(standoff, "geometry.standoff_m");
  if (n_tx < 1) throw ConfigError("key 'geometry.n_tx' must be >= 1");
  for (double b : array_side_sweep)
    require_positive(b, "geometry.array_side_sweep_m");
  if (scene_rows < 1 || scene_cols < 1)
    throw ConfigError("key 'scene.rows'/'scene.cols' must be >= 1");
  require_positive(pixel_size, "scene.pixel_size_m");
  if (!scene_file.empty() && !std::filesystem::exists(scene_file))
    throw ConfigError("key 'scene.file' references a missing file: " +
                      scene_file);
  require_positive(sampling_frequency, "sampling.frequency_hz");
  require_positive(sim_rate, "sampling.sim_rate_hz");
  require_positive(nyquist_rate, "sampling.nyquist_rate_hz");
  if (max_pulses < 1) throw ConfigError("key 'sampling.max_pulses' must be >= 1");
  if (spatial_rows < 1 || spatial_cols < 1)
    throw ConfigError("key 'spatial.rows'/'spatial.cols' must be >= 1");
  require_positive(spatial_pixel_size, "spatial.pixel_size_m");
  if (spatial_detections < 100)
    throw ConfigError("key 'spatial.detections' must be >= 100");
  if (snr_db_list.empty())
    throw ConfigError("key 'noise.snr_db' must list at least one level");
  if (noise_seeds.empty())
    throw ConfigError("key 'noise.seeds' must list at least one seed");
  if (gp.regularization < 0.0)
    throw ConfigError("key 'solver.gp_regularization' must be >= 0");
  if (gp.max_iterations < 1)
    throw ConfigError("key 'solver.gp_max_iterations' must be >= 1");
  require_positive(gp.tolerance, "solver.gp_tolerance");
  require_positive(condition_ceiling, "solver.condition_ceiling");
  for (const TargetSpec& t : targets) {
    if (t.row0 < 0 || t.row1 >= scene_rows || t.col0 < 0 ||
        t.col1 >= scene_cols || t.row0 > t.row1 || t.col0 > t.col1)
      throw ConfigError("key 'scene.targets' has an out-of-bounds rectangle");
    if (t.coefficient < 0.0)
      throw ConfigError("key 'scene.targets' has a negative coefficient");
  }
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

ExperimentConfig parse_config(const std::string& path) {
  RawConfig raw = read_raw(path);
  ExperimentConfig cfg;

  cfg.carrier.bandwidth = raw.number("carrier.bandwidth_hz", cfg.carrier.bandwidth);
  cfg.carrier.center_frequency =
      raw.number("carrier.center_frequency_hz", cfg.carrier.center_frequency);
  cfg.carrier.pulse_width =
      raw.number("carrier.pulse_width_s", cfg.carrier.pulse_width);
  cfg.carrier.phase = raw.number("carrier.phase_rad", cfg.carrier.phase);
  const std::string mode = raw.text("carrier.mode", "linear_chirp");
  if (mode == "linear_chirp") {
    cfg.carrier.mode = CarrierMode::linear_chirp;
  } else if (mode == "constant_frequency") {
    cfg.carrier.mode = CarrierMode::constant_frequency;
  } else {
    throw ConfigError("key 'carrier.mode' must be 'linear_chirp' or "
                      "'constant_frequency', got: " + mode);
  }

  cfg.n_tx = static_cast<int>(raw.number("geometry.n_tx", cfg.n_tx));
  cfg.array_side = raw.number("geometry.array_side_m", cfg.array_side);
  cfg.standoff = raw.number("geometry.standoff_m", cfg.standoff);
  cfg.array_side_sweep =
      raw.numbers("geometry.array_side_sweep_m", cfg.array_side_sweep);

  cfg.scene_rows = static_cast<int>(raw.number("scene.rows", cfg.scene_rows));
  cfg.scene_cols = static_cast<int>(raw.number("scene.cols", cfg.scene_cols));
  cfg.pixel_size = raw.number("scene.pixel_size_m", cfg.pixel_size);
  cfg.scene_file = raw.text("scene.file", cfg.scene_file);
  const std::string targets = raw.text("scene.targets", "");
  if (!targets.empty()) cfg.targets = parse_targets(targets, path);

  cfg.sampling_frequency =
      raw.number("sampling.frequency_hz", cfg.sampling_frequency);
  cfg.n_detections = static_cast<std::size_t>(
      raw.number("sampling.detections", static_cast<double>(cfg.n_detections)));
  cfg.sim_rate = raw.number("sampling.sim_rate_hz", cfg.sim_rate);
  cfg.max_pulses = static_cast<std::size_t>(
      raw.number("sampling.max_pulses", static_cast<double>(cfg.max_pulses)));
  cfg.nyquist_rate = raw.number("sampling.nyquist_rate_hz", cfg.nyquist_rate);
  cfg.autocorr_lags = static_cast<std::size_t>(raw.number(
      "sampling.autocorr_lags", static_cast<double>(cfg.autocorr_lags)));

  cfg.spatial_rows =
      static_cast<int>(raw.number("spatial.rows", cfg.spatial_rows));
  cfg.spatial_cols =
      static_cast<int>(raw.number("spatial.cols", cfg.spatial_cols));
  cfg.spatial_pixel_size =
      raw.number("spatial.pixel_size_m", cfg.spatial_pixel_size);
  cfg.spatial_detections = static_cast<std::size_t>(raw.number(
      "spatial.detections", static_cast<double>(cfg.spatial_detections)));

  cfg.snr_db_list = raw.numbers("noise.snr_db", cfg.snr_db_list);
  std::vector<double> seed_defaults(cfg.noise_seeds.begin(),
                                    cfg.noise_seeds.end());
  std::vector<double> seeds = raw.numbers("noise.seeds", seed_defaults);
  cfg.noise_seeds.assign(seeds.begin(), seeds.end());
  cfg.include_noiseless =
      raw.number("noise.include_noiseless", cfg.include_noiseless ? 1 : 0) != 0;

  const std::string method = raw.text("solver.method", "least_squares");
  if (method == "direct") {
    cfg.solver = SolverMethod::direct;
  } else if (method == "least_squares") {
    cfg.solver = SolverMethod::least_squares;
  } else if (method == "gradient_projection") {
    cfg.solver = SolverMethod::gradient_projection;
  } else {
    throw ConfigError("key 'solver.method' must be one of direct, "
                      "least_squares, gradient_projection, got: " + method);
  }
  cfg.gp.regularization =
      raw.number("solver.gp_regularization", cfg.gp.regularization);
  cfg.gp.max_iterations = static_cast<std::size_t>(raw.number(
      "solver.gp_max_iterations", static_cast<double>(cfg.gp.max_iterations)));
  cfg.gp.tolerance = raw.number("solver.gp_tolerance", cfg.gp.tolerance);
  cfg.condition_ceiling =
      raw.number("solver.condition_ceiling", cfg.condition_ceiling);

  cfg.output_dir = raw.text("output.directory", cfg.output_dir);
  cfg.seed = static_cast<std::uint64_t>(
      raw.number("output.seed", static_cast<double>(cfg.seed)));

  raw.reject_unknown();
  cfg.validate();
  return cfg;
}

} // namespace mwgi
