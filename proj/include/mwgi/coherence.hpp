// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>

#include "mwgi/forward.hpp"
#include "mwgi/geometry.hpp"

namespace mwgi {

struct CoherenceReport {
  double coherence_time = 0.0; // seconds, 1/B
  double wavelength = 0.0;     // meters, c/f_c
  double dc_lower = 0.0;       // meters, R*lambda/(2b)
  double dc_upper = 0.0;       // meters, R*lambda/b
  std::optional<double> measured_width; // meters, empirical FWHM
};

// 1/bandwidth. Throws std::domain_error on nonpositive bandwidth.
double coherence_time(double bandwidth);

// (R*lambda/(2b), R*lambda/b). Throws std::domain_error on a nonpositive
// argument.
std::pair<double, double> coherence_size_bounds(double standoff,
                                                double wavelength,
                                                double array_side);

CoherenceReport make_coherence_report(const CarrierSpec& carrier,
                                      const ArrayGeometry& geometry);

// |Pearson correlation| between the per-detection field series at the
// reference pixel and at every pixel of the grid. Exactly 1 at the
// reference. Throws std::runtime_error on a zero-variance series.
Eigen::MatrixXd correlation_map_from_fields(const Eigen::MatrixXcd& fields,
                                            int rows, int cols,
                                            int ref_row, int ref_col);

// Simulates n_detections fields over the grid (detection spacing
// 4/bandwidth, the Table-II ratio, unless sample_interval > 0) and
// correlates against the reference pixel.
Eigen::MatrixXd spatial_correlation_map(const ArrayGeometry& geometry,
                                        const CarrierSpec& carrier,
                                        const Scene& grid, int ref_row,
                                        int ref_col, std::size_t n_detections,
                                        std::uint64_t seed,
                                        double sample_interval = 0.0,
                                        const ForwardOptions& options = {});

// Full width at half maximum of the correlation profile along the row
// through the reference pixel, linearly interpolated, in meters. Throws
// std::runtime_error when the profile never drops below half maximum on
// both sides (width unresolved).
double correlation_width(const Eigen::MatrixXd& map, double pixel_size,
                         int ref_row, int ref_col);

} // namespace mwgi
