// SPDX-License-Identifier: Apache-2.0
#include "mwgi/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mwgi {

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

std::vector<double> split_doubles(const std::string& line,
                                  const std::string& context) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      out.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw std::runtime_error("bad numeric field in " + context + ": " + field);
    }
  }
  return out;
}

} // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& m) {
  auto out = open_out(path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(split_doubles(line, path.string()));
    if (rows.back().size() != rows.front().size())
      throw std::runtime_error("ragged CSV matrix: " + path.string());
  }
  if (rows.empty()) throw std::runtime_error("empty CSV matrix: " + path.string());
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

void write_complex_matrix_csv(const std::filesystem::path& path,
                              const Eigen::MatrixXcd& m) {
  auto out = open_out(path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag());
    }
    out << '\n';
  }
}

void write_complex_vector_csv(const std::filesystem::path& path,
                              const Eigen::VectorXcd& v) {
  auto out = open_out(path);
  out << "re,im\n";
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << format_double(v(i).real()) << ',' << format_double(v(i).imag())
        << '\n';
}

void write_table_csv(const std::filesystem::path& path,
                     const std::string& col_a, const std::string& col_b,
                     const std::vector<double>& a,
                     const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("table columns must have equal length");
  auto out = open_out(path);
  out << col_a << ',' << col_b << '\n';
  for (std::size_t i = 0; i < a.size(); ++i)
    out << format_double(a[i]) << ',' << format_double(b[i]) << '\n';
}

void write_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  auto out = open_out(path, /*binary=*/true);
  out << "P5\n" << m.cols() << ' ' << m.rows() << "\n255\n";
  const double peak = m.maxCoeff();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      double v = peak > 0.0 ? m(r, c) / peak : 0.0;
      v = std::clamp(v, 0.0, 1.0);
      out.put(static_cast<char>(
          static_cast<unsigned char>(std::lround(v * 255.0))));
    }
}

void save_scene(const std::filesystem::path& path, const Scene& scene) {
  write_matrix_csv(path, scene.coefficients);
  auto meta = open_out(path.string() + ".meta");
  meta << "rows = " << scene.rows << '\n'
       << "cols = " << scene.cols << '\n'
       << "pixel_size_m = " << format_double(scene.pixel_size) << '\n'
       << "origin_x_m = " << format_double(scene.origin.x()) << '\n'
       << "origin_y_m = " << format_double(scene.origin.y()) << '\n'
       << "origin_z_m = " << format_double(scene.origin.z()) << '\n';
}

Scene load_scene(const std::filesystem::path& path) {
  Scene s;
  s.coefficients = read_matrix_csv(path);
  s.rows = static_cast<int>(s.coefficients.rows());
  s.cols = static_cast<int>(s.coefficients.cols());

  std::ifstream meta(path.string() + ".meta");
  if (!meta)
    throw std::runtime_error("missing scene sidecar: " + path.string() + ".meta");
  std::string line;
  bool have_pixel = false;
  while (std::getline(meta, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t");
      const auto e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "pixel_size_m") {
      s.pixel_size = std::stod(value);
      have_pixel = true;
    } else if (key == "origin_x_m") {
      s.origin.x() = std::stod(value);
    } else if (key == "origin_y_m") {
      s.origin.y() = std::stod(value);
    } else if (key == "origin_z_m") {
      s.origin.z() = std::stod(value);
    }
  }
  if (!have_pixel)
    throw std::runtime_error("scene sidecar lacks pixel_size_m: " +
                             path.string());
  s.validate();
  return s;
}

} // namespace mwgi
