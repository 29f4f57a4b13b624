// SPDX-License-Identifier: Apache-2.0
#include "mwgi/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace mwgi {

Scene Scene::zeros(int rows, int cols, double pixel_size) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("scene dimensions must be >= 1");
  if (!(pixel_size > 0.0))
    throw std::invalid_argument("pixel_size must be positive");
  Scene s;
  s.rows = rows;
  s.cols = cols;
  s.pixel_size = pixel_size;
  s.origin = Vec3(-0.5 * cols * pixel_size, -0.5 * rows * pixel_size, 0.0);
  s.coefficients = Eigen::MatrixXd::Zero(rows, cols);
  return s;
}

Eigen::VectorXd Scene::flattened() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows) * cols);
  for (int p = 0; p < rows; ++p)
    for (int q = 0; q < cols; ++q)
      v(static_cast<Eigen::Index>(p) * cols + q) = coefficients(p, q);
  return v;
}

void Scene::validate() const {
  if (rows < 1 || cols < 1 || coefficients.rows() != rows ||
      coefficients.cols() != cols)
    throw std::invalid_argument("scene coefficient matrix shape mismatch");
  if (!(pixel_size > 0.0))
    throw std::invalid_argument("pixel_size must be positive");
  if ((coefficients.array() < 0.0).any())
    throw std::invalid_argument("scattering coefficients must be nonnegative");
}

ArrayGeometry build_square_array(int n_tx, double side, double standoff) {
  if (n_tx < 1) throw std::invalid_argument("need at least one transmitter");
  if (!(side > 0.0)) throw std::invalid_argument("array side must be positive");
  if (!(standoff > 0.0))
    throw std::invalid_argument("standoff must be positive");

  ArrayGeometry g;
  g.standoff = standoff;
  g.array_side = side;
  g.rx_position = Vec3(0.0, 0.0, standoff);

  if (n_tx == 1) {
    g.tx_positions.push_back(Vec3(0.0, 0.0, standoff));
    return g;
  }

  // Evenly spaced along the perimeter starting from a corner; n_tx = 4
  // lands exactly on the four corners.
  const double h = 0.5 * side;
  const Vec3 corners[4] = {Vec3(-h, -h, standoff), Vec3(h, -h, standoff),
                           Vec3(h, h, standoff), Vec3(-h, h, standoff)};
  for (int k = 0; k < n_tx; ++k) {
    double u = 4.0 * k / n_tx; // position in [0,4) along the perimeter
    int edge = static_cast<int>(u);
    double frac = u - edge;
    const Vec3& a = corners[edge % 4];
    const Vec3& b = corners[(edge + 1) % 4];
    g.tx_positions.push_back(a + frac * (b - a));
  }
  return g;
}

Vec3 pixel_center(const Scene& scene, int p, int q) {
  if (p < 0 || p >= scene.rows || q < 0 || q >= scene.cols)
    throw std::out_of_range("pixel index out of range");
  return scene.origin + Vec3((q + 0.5) * scene.pixel_size,
                             (p + 0.5) * scene.pixel_size, 0.0);
}

double two_way_delay(const Vec3& tx, const Vec3& pixel, const Vec3& rx) {
  return ((tx - pixel).norm() + (pixel - rx).norm()) / kSpeedOfLight;
}

Scene paint_targets(Scene scene, const std::vector<TargetSpec>& targets) {
  scene.coefficients.setZero(scene.rows, scene.cols);
  for (const auto& t : targets) {
    if (t.row0 < 0 || t.row1 >= scene.rows || t.col0 < 0 ||
        t.col1 >= scene.cols || t.row0 > t.row1 || t.col0 > t.col1)
      throw std::out_of_range("target rectangle out of scene bounds");
    if (t.coefficient < 0.0)
      throw std::invalid_argument("target coefficient must be nonnegative");
    for (int p = t.row0; p <= t.row1; ++p)
      for (int q = t.col0; q <= t.col1; ++q)
        scene.coefficients(p, q) = t.coefficient;
  }
  return scene;
}

} // namespace mwgi
