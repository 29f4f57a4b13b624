// SPDX-License-Identifier: Apache-2.0
#include "mwgi/reconstruction.hpp"

#include <cmath>
#include <limits>

namespace mwgi {

std::string to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::direct: return "direct";
    case SolverMethod::least_squares: return "least_squares";
    case SolverMethod::gradient_projection: return "gradient_projection";
  }
  return "unknown";
}

void GPConfig::validate() const {
  if (regularization < 0.0)
    throw std::invalid_argument("regularization must be >= 0");
  if (max_iterations < 1)
    throw std::invalid_argument("max_iterations must be >= 1");
  if (!(tolerance > 0.0))
    throw std::invalid_argument("tolerance must be positive");
}

Reconstructor::Reconstructor(const MeasurementSet& ms)
    : field_(ms.field_matrix),
      received_(ms.received),
      rho_(ms.rho),
      rows_(ms.scene_rows),
      cols_(ms.scene_cols) {
  if (field_.rows() != received_.size())
    throw std::invalid_argument("field matrix / received size mismatch");
  if (static_cast<Eigen::Index>(rows_) * cols_ != field_.cols())
    throw std::invalid_argument("scene dimensions do not match field matrix");
}

const Eigen::MatrixXd& Reconstructor::stacked() const {
  if (!stacked_) {
    Eigen::MatrixXd a(2 * field_.rows(), field_.cols());
    a.topRows(field_.rows()) = (rho_ * field_).real();
    a.bottomRows(field_.rows()) = (rho_ * field_).imag();
    stacked_ = std::move(a);
  }
  return *stacked_;
}

Eigen::VectorXd Reconstructor::stack_rhs(const Eigen::VectorXcd& r) const {
  Eigen::VectorXd b(2 * r.size());
  b.head(r.size()) = r.real();
  b.tail(r.size()) = r.imag();
  return b;
}

ReconstructionResult Reconstructor::finish(
    Eigen::VectorXd delta, SolverMethod method,
    const Eigen::VectorXcd& received) const {
  ReconstructionResult res;
  res.method = method;
  res.residual_norm =
      (rho_ * (field_ * delta.cast<std::complex<double>>()) - received)
          .norm();
  delta = delta.cwiseMax(0.0);
  res.coefficients.resize(rows_, cols_);
  for (int p = 0; p < rows_; ++p)
    for (int q = 0; q < cols_; ++q)
      res.coefficients(p, q) = delta(static_cast<Eigen::Index>(p) * cols_ + q);
  return res;
}

ReconstructionResult Reconstructor::direct(double condition_ceiling) const {
  return direct(received_, condition_ceiling);
}

ReconstructionResult Reconstructor::direct(const Eigen::VectorXcd& received,
                                           double condition_ceiling) const {
  if (received.size() != field_.rows())
    throw std::invalid_argument("received vector size mismatch");
  if (field_.rows() != field_.cols())
    throw std::invalid_argument("direct inversion requires a square system");
  if (!lu_) {
    lu_.emplace(field_);
    const double rcond = lu_->rcond();
    const double from_rcond = rcond > 0.0
                                  ? 1.0 / rcond
                                  : std::numeric_limits<double>::infinity();
    // rcond() can miss exact singularity after pivoted elimination; the
    // U-diagonal spread catches it, so keep the more pessimistic of the two.
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    const auto& diag = lu_->matrixLU().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      const double d = std::abs(diag(i));
      dmax = std::max(dmax, d);
      dmin = std::min(dmin, d);
    }
    const double from_diag = dmin > 0.0
                                 ? dmax / dmin
                                 : std::numeric_limits<double>::infinity();
    lu_condition_ = std::max(from_rcond, from_diag);
  }
  if (!(*lu_condition_ < condition_ceiling))
    throw IllConditionedError("field matrix is rank-deficient or "
                              "ill-conditioned (condition estimate " +
                                  std::to_string(*lu_condition_) + ")",
                              *lu_condition_);

  const Eigen::VectorXcd delta_c = lu_->solve(received) / rho_;
  ReconstructionResult res =
      finish(delta_c.real(), SolverMethod::direct, received);
  res.iterations = 0;
  res.condition_estimate = *lu_condition_;
  return res;
}

ReconstructionResult Reconstructor::least_squares() const {
  return least_squares(received_);
}

ReconstructionResult Reconstructor::least_squares(
    const Eigen::VectorXcd& received) const {
  if (received.size() != field_.rows())
    throw std::invalid_argument("received vector size mismatch");
  if (!cod_) cod_.emplace(stacked());
  const Eigen::VectorXd delta = cod_->solve(stack_rhs(received));

  ReconstructionResult res =
      finish(delta, SolverMethod::least_squares, received);
  const auto rank = cod_->rank();
  if (rank > 0) {
    const auto& t = cod_->matrixT();
    const double d0 = std::abs(t(0, 0));
    const double dr = std::abs(t(rank - 1, rank - 1));
    res.condition_estimate =
        dr > 0.0 ? d0 / dr : std::numeric_limits<double>::infinity();
  }
  return res;
}

ReconstructionResult Reconstructor::gradient_projection(
    const GPConfig& config) const {
  return gradient_projection(config, received_);
}

ReconstructionResult Reconstructor::gradient_projection(
    const GPConfig& config, const Eigen::VectorXcd& received) const {
  config.validate();
  if (received.size() != field_.rows())
    throw std::invalid_argument("received vector size mismatch");

  const Eigen::MatrixXd& a = stacked();
  const Eigen::VectorXd b = stack_rhs(received);
  const double lambda = config.regularization;

  // F(x) = 0.5*||Ax - b||^2 + lambda*sum(x) over x >= 0
  auto objective = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& ax) {
    return 0.5 * (ax - b).squaredNorm() + lambda * x.sum();
  };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(a.cols());
  Eigen::VectorXd ax = Eigen::VectorXd::Zero(a.rows());
  double fx = objective(x, ax);

  ReconstructionResult res;
  res.method = SolverMethod::gradient_projection;
  res.objective_history.push_back(fx);

  Eigen::VectorXd grad = a.transpose() * (ax - b);
  grad.array() += lambda;

  Eigen::VectorXd x_prev, grad_prev;
  bool converged = false;
  std::size_t iter = 0;
  const double armijo_c = 1.0e-4;

  for (; iter < config.max_iterations; ++iter) {
    // projected stationarity: no feasible descent direction left
    if ((x - (x - grad).cwiseMax(0.0)).lpNorm<Eigen::Infinity>() <=
        1.0e-15 * (1.0 + grad.lpNorm<Eigen::Infinity>())) {
      converged = true;
      break;
    }

    // Barzilai-Borwein step, safeguarded; exact line search on first pass
    double step;
    if (iter == 0) {
      const Eigen::VectorXd ag = a * grad;
      const double denom = ag.squaredNorm();
      step = denom > 0.0 ? grad.squaredNorm() / denom : 1.0;
    } else {
      const Eigen::VectorXd s = x - x_prev;
      const Eigen::VectorXd y = grad - grad_prev;
      const double sy = s.dot(y);
      step = sy > 0.0 ? s.squaredNorm() / sy : 1.0;
    }
    step = std::clamp(step, 1.0e-12, 1.0e12);

    // Armijo backtracking along the projection arc
    Eigen::VectorXd x_new, ax_new;
    double f_new = fx;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      x_new = (x - step * grad).cwiseMax(0.0);
      ax_new = a * x_new;
      f_new = objective(x_new, ax_new);
      const double decrease = grad.dot(x_new - x);
      if (f_new <= fx + armijo_c * decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break; // numerical stall

    x_prev = std::move(x);
    grad_prev = grad;
    x = std::move(x_new);
    ax = std::move(ax_new);

    const double rel_decrease =
        (fx - f_new) / std::max(std::abs(fx), 1.0e-300);
    fx = f_new;
    res.objective_history.push_back(fx);
    grad = a.transpose() * (ax - b);
    grad.array() += lambda;

    if (rel_decrease < config.tolerance) {
      ++iter;
      converged = true;
      break;
    }
  }

  ReconstructionResult out =
      finish(x, SolverMethod::gradient_projection, received);
  out.iterations = iter;
  out.converged = converged;
  out.objective_history = std::move(res.objective_history);
  return out;
}

ReconstructionResult solve_direct(const MeasurementSet& ms,
                                  double condition_ceiling) {
  return Reconstructor(ms).direct(condition_ceiling);
}

ReconstructionResult solve_least_squares(const MeasurementSet& ms) {
  return Reconstructor(ms).least_squares();
}

ReconstructionResult solve_gradient_projection(const MeasurementSet& ms,
                                               const GPConfig& config) {
  return Reconstructor(ms).gradient_projection(config);
}

double mse(const Eigen::MatrixXd& estimate, const Eigen::MatrixXd& truth) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
    throw std::invalid_argument("mse: dimension mismatch");
  auto normalized = [](const Eigen::MatrixXd& m) {
    const double peak = m.cwiseAbs().maxCoeff();
    return peak > 0.0 ? Eigen::MatrixXd(m / peak) : m;
  };
  const Eigen::MatrixXd diff = normalized(estimate) - normalized(truth);
  return diff.squaredNorm() / static_cast<double>(diff.size());
}

} // namespace mwgi
