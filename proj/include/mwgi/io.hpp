// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "mwgi/geometry.hpp"

namespace mwgi {

// Shortest representation that round-trips a double exactly (%.17g).
std::string format_double(double v);

void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

// Each complex entry contributes a "re,im" pair, so a row has 2*cols fields.
void write_complex_matrix_csv(const std::filesystem::path& path,
                              const Eigen::MatrixXcd& m);

void write_complex_vector_csv(const std::filesystem::path& path,
                              const Eigen::VectorXcd& v);

// Two-column CSV with a header row.
void write_table_csv(const std::filesystem::path& path,
                     const std::string& col_a, const std::string& col_b,
                     const std::vector<double>& a,
                     const std::vector<double>& b);

// 8-bit binary PGM (P5), linearly scaled so the matrix maximum maps to 255.
void write_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& m);

// Scene as a coefficient-matrix CSV plus a "<path>.meta" sidecar holding
// pixel_size and origin.
void save_scene(const std::filesystem::path& path, const Scene& scene);
Scene load_scene(const std::filesystem::path& path);

} // namespace mwgi
