// SPDX-License-Identifier: Apache-2.0
#include "mwgi/coherence.hpp"

#include <cmath>
#include <stdexcept>

namespace mwgi {

double coherence_time(double bandwidth) {
  if (!(bandwidth > 0.0))
    throw std::domain_error("bandwidth must be positive");
  return 1.0 / bandwidth;
}

std::pair<double, double> coherence_size_bounds(double standoff,
                                                double wavelength,
                                                double array_side) {
  if (!(standoff > 0.0) || !(wavelength > 0.0) || !(array_side > 0.0))
    throw std::domain_error("coherence-size arguments must be positive");
  const double upper = standoff * wavelength / array_side;
  return {0.5 * upper, upper};
}

CoherenceReport make_coherence_report(const CarrierSpec& carrier,
                                      const ArrayGeometry& geometry) {
  CoherenceReport rep;
  rep.coherence_time = coherence_time(carrier.bandwidth);
  rep.wavelength = kSpeedOfLight / carrier.center_frequency;
  std::tie(rep.dc_lower, rep.dc_upper) = coherence_size_bounds(
      geometry.standoff, rep.wavelength, geometry.array_side);
  return rep;
}

Eigen::MatrixXd correlation_map_from_fields(const Eigen::MatrixXcd& fields,
                                            int rows, int cols, int ref_row,
                                            int ref_col) {
  if (static_cast<Eigen::Index>(rows) * cols != fields.cols())
    throw std::invalid_argument("field matrix does not match the grid");
  if (ref_row < 0 || ref_row >= rows || ref_col < 0 || ref_col >= cols)
    throw std::out_of_range("reference pixel out of range");
  const Eigen::Index n = fields.rows();
  if (n < 2) throw std::invalid_argument("need at least two detections");

  const Eigen::Index ref =
      static_cast<Eigen::Index>(ref_row) * cols + ref_col;
  Eigen::VectorXcd x = fields.col(ref);
  x.array() -= x.mean();
  const double sx = x.norm();
  if (sx == 0.0)
    throw std::runtime_error("zero-variance field series at the reference pixel");

  Eigen::MatrixXd map(rows, cols);
  for (int p = 0; p < rows; ++p)
    for (int q = 0; q < cols; ++q) {
      const Eigen::Index col = static_cast<Eigen::Index>(p) * cols + q;
      if (col == ref) {
        map(p, q) = 1.0;
        continue;
      }
      Eigen::VectorXcd y = fields.col(col);
      y.array() -= y.mean();
      const double sy = y.norm();
      if (sy == 0.0)
        throw std::runtime_error("zero-variance field series in the grid");
      // Cauchy-Schwarz bounds the magnitude by 1; rounding can nudge
      // perfectly correlated columns a hair above it, so clamp.
      map(p, q) = std::min(1.0, std::abs(x.dot(y)) / (sx * sy));
    }
  return map;
}

Eigen::MatrixXd spatial_correlation_map(const ArrayGeometry& geometry,
                                        const CarrierSpec& carrier,
                                        const Scene& grid, int ref_row,
                                        int ref_col, std::size_t n_detections,
                                        std::uint64_t seed,
                                        double sample_interval,
                                        const ForwardOptions& options) {
  if (n_detections < 100)
    throw std::invalid_argument(
        "spatial correlation needs at least 100 detections");
  const double spacing =
      sample_interval > 0.0 ? sample_interval : 4.0 / carrier.bandwidth;

  const double t0 = earliest_detection_time(grid, geometry);
  std::vector<double> times(n_detections);
  for (std::size_t n = 0; n < n_detections; ++n)
    times[n] = t0 + static_cast<double>(n) * spacing;

  const Eigen::MatrixXcd fields =
      compute_field_matrix(grid, geometry, carrier, times, seed, options);
  return correlation_map_from_fields(fields, grid.rows, grid.cols, ref_row,
                                     ref_col);
}

double correlation_width(const Eigen::MatrixXd& map, double pixel_size,
                         int ref_row, int ref_col) {
  if (ref_row < 0 || ref_row >= map.rows() || ref_col < 0 ||
      ref_col >= map.cols())
    throw std::out_of_range("reference pixel out of range");
  if (!(pixel_size > 0.0))
    throw std::invalid_argument("pixel_size must be positive");
  const double peak = map(ref_row, ref_col);
  if (map.maxCoeff() > peak)
    throw std::invalid_argument("map maximum is not at the reference pixel");
  const double half = 0.5 * peak;

  // first crossing below half maximum on each side, linearly interpolated
  auto side_width = [&](int step) -> double {
    double prev = peak;
    for (int q = ref_col + step; q >= 0 && q < map.cols(); q += step) {
      const double v = map(ref_row, q);
      if (v < half) {
        const int q_prev = q - step;
        const double frac = (prev - half) / (prev - v);
        return (std::abs(q_prev - ref_col) + frac) * pixel_size;
      }
      prev = v;
    }
    throw std::runtime_error(
        "correlation width unresolved: profile never drops below half maximum");
  };

  return side_width(-1) + side_width(+1);
}

} // namespace mwgi
