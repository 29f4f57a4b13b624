// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mwgi {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact SI value

using Vec3 = Eigen::Vector3d;

/// Discretized scattering scene: a rows x cols grid of nonnegative
/// scattering coefficients on the z = origin.z() plane. `origin` is the
/// corner of pixel (0,0); pixels are square with edge `pixel_size`.
struct Scene {
  int rows = 0;
  int cols = 0;
  double pixel_size = 0.0; // meters
  Vec3 origin = Vec3::Zero();
  Eigen::MatrixXd coefficients; // rows x cols, each entry >= 0

  // All-zero scene centered on the boresight axis (grid center at x=y=0, z=0).
  static Scene zeros(int rows, int cols, double pixel_size);

  // Row-major flattening, matching the measurement-matrix column order.
  Eigen::VectorXd flattened() const;

  void validate() const;
};

/// Positions of the transmit antennas and the single receiver. All antennas
/// lie in a plane parallel to the scene plane at distance `standoff`.
struct ArrayGeometry {
  std::vector<Vec3> tx_positions;
  Vec3 rx_position = Vec3::Zero();
  double standoff = 0.0;   // meters
  double array_side = 0.0; // meters
};

/// Axis-aligned rectangular target, inclusive grid-index extents.
struct TargetSpec {
  int row0 = 0;
  int row1 = 0;
  int col0 = 0;
  int col1 = 0;
  double coefficient = 1.0;
};

// n_tx transmitters evenly spaced on the perimeter of a square of side
// `side` (corners first, so n_tx = 4 gives the four corners), receiver at
// the square's center, all at z = standoff. The scene plane is z = 0.
ArrayGeometry build_square_array(int n_tx, double side, double standoff);

// World coordinates of the center of sub-plane (p, q).
Vec3 pixel_center(const Scene& scene, int p, int q);

// Round-trip propagation delay tx -> pixel -> rx in seconds.
double two_way_delay(const Vec3& tx, const Vec3& pixel, const Vec3& rx);

// Writes target rectangles over a zero background; later targets overwrite
// earlier ones on overlap. Grid dimensions are taken from `scene`.
Scene paint_targets(Scene scene, const std::vector<TargetSpec>& targets);

} // namespace mwgi
