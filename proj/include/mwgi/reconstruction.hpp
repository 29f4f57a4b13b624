// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwgi/forward.hpp"

namespace mwgi {

enum class SolverMethod { direct, least_squares, gradient_projection };

std::string to_string(SolverMethod m);

struct ReconstructionResult {
  Eigen::MatrixXd coefficients; // rows x cols, elementwise >= 0
  SolverMethod method = SolverMethod::direct;
  std::size_t iterations = 0;
  double residual_norm = 0.0; // ||rho*E*delta - R||_2 before clamping
  std::optional<double> condition_estimate;
  bool converged = true;
  std::vector<double> objective_history; // gradient projection only
};

struct GPConfig {
  double regularization = 0.0; // l1 weight, >= 0
  std::size_t max_iterations = 10000;
  double tolerance = 1.0e-8; // relative objective decrease

  void validate() const;
};

struct IllConditionedError : std::runtime_error {
  explicit IllConditionedError(const std::string& what, double condition)
      : std::runtime_error(what), condition(condition) {}
  double condition;
};

/// Solver frontend over one measurement set. Factorizations are computed
/// lazily and cached, so SNR sweeps reusing the same field matrix pay for
/// the decomposition once. The least-squares and gradient-projection paths
/// work on the real-stacked system [Re; Im](rho*E) * delta = [Re; Im](R)
/// since delta is physically real and nonnegative.
class Reconstructor {
 public:
  explicit Reconstructor(const MeasurementSet& ms);

  ReconstructionResult direct(double condition_ceiling = 1.0e10) const;
  ReconstructionResult direct(const Eigen::VectorXcd& received,
                              double condition_ceiling = 1.0e10) const;
  ReconstructionResult least_squares() const;
  ReconstructionResult least_squares(const Eigen::VectorXcd& received) const;
  ReconstructionResult gradient_projection(const GPConfig& config) const;
  ReconstructionResult gradient_projection(const GPConfig& config,
                                           const Eigen::VectorXcd& received) const;

 private:
  Eigen::MatrixXcd field_;
  Eigen::VectorXcd received_;
  double rho_;
  int rows_, cols_;

  mutable std::optional<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu_;
  mutable std::optional<double> lu_condition_;
  mutable std::optional<
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>>
      cod_;
  mutable std::optional<Eigen::MatrixXd> stacked_;

  const Eigen::MatrixXd& stacked() const;
  Eigen::VectorXd stack_rhs(const Eigen::VectorXcd& r) const;
  ReconstructionResult finish(Eigen::VectorXd delta, SolverMethod method,
                              const Eigen::VectorXcd& received) const;
};

// One-shot frontends.
ReconstructionResult solve_direct(const MeasurementSet& ms,
                                  double condition_ceiling = 1.0e10);
ReconstructionResult solve_least_squares(const MeasurementSet& ms);
ReconstructionResult solve_gradient_projection(const MeasurementSet& ms,
                                               const GPConfig& config);

// Mean squared per-pixel error between max-normalized matrices (an all-zero
// matrix normalizes to itself). Throws std::invalid_argument on dimension
// mismatch.
double mse(const Eigen::MatrixXd& estimate, const Eigen::MatrixXd& truth);

} // namespace mwgi
