#include "pagraph/gauss_newton.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "pagraph/errors.hpp"

namespace pagraph {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

bool all_finite(const VectorXd& v) { return v.allFinite(); }

}  // namespace

const char* to_string(GaussNewtonStatus status) noexcept {
  switch (status) {
    case GaussNewtonStatus::kConverged: return "converged";
    case GaussNewtonStatus::kMaxIterations: return "max-iterations";
    case GaussNewtonStatus::kStalled: return "stalled";
    case GaussNewtonStatus::kNonFinite: return "non-finite";
    case GaussNewtonStatus::kRunaway: return "runaway";
  }
  return "unknown";
}

GaussNewtonResult gauss_newton(const LeastSquaresProblem& problem, std::vector<double> initial,
                               const GaussNewtonOptions& options) {
  const auto r = static_cast<Index>(problem.residual_count);
  const auto p = static_cast<Index>(problem.parameter_count);
  if (p == 0 || r == 0 || initial.size() != problem.parameter_count || !problem.evaluate) {
    throw ParameterError("gauss_newton: empty problem or parameter count mismatch");
  }

  VectorXd theta = Eigen::Map<const VectorXd>(initial.data(), p);
  VectorXd residuals(r);
  RowMatrix jacobian(r, p);
  VectorXd trial_residuals(r);

  auto objective_at = [&](const VectorXd& t, VectorXd& res) {
    problem.evaluate({t.data(), static_cast<std::size_t>(p)}, {res.data(), static_cast<std::size_t>(r)}, {});
    return res.squaredNorm() / static_cast<double>(r);
  };

  GaussNewtonResult result;
  auto finish = [&](GaussNewtonStatus status, double objective) {
    result.theta.assign(theta.data(), theta.data() + p);
    result.objective = objective;
    result.status = status;
    return result;
  };

  problem.evaluate({theta.data(), static_cast<std::size_t>(p)},
                   {residuals.data(), static_cast<std::size_t>(r)},
                   {jacobian.data(), static_cast<std::size_t>(r * p)});
  double objective = residuals.squaredNorm() / static_cast<double>(r);
  if (!std::isfinite(objective) || !jacobian.allFinite()) return finish(GaussNewtonStatus::kNonFinite, objective);
  result.objective_trace.push_back(objective);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const MatrixXd normal = jacobian.transpose() * jacobian;
    const VectorXd gradient = jacobian.transpose() * residuals;

    VectorXd step;
    Eigen::LDLT<MatrixXd> ldlt(normal);
    const double scale = std::max(normal.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    const bool singular = ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
                          ldlt.vectorD().cwiseAbs().minCoeff() <= 1e-14 * scale;
    if (!singular) step = ldlt.solve(gradient);
    if (singular || !all_finite(step)) {
      ++result.regularized_steps;
      for (double lambda = 1e-10; lambda <= 1e10; lambda *= 100.0) {
        MatrixXd damped = normal;
        damped.diagonal() += lambda * normal.diagonal() + VectorXd::Constant(p, lambda * scale);
        step = damped.ldlt().solve(gradient);
        if (all_finite(step)) break;
      }
      if (!all_finite(step)) return finish(GaussNewtonStatus::kNonFinite, objective);
    }

    const double full_step_norm = step.norm();
    const double relative = full_step_norm / (1.0 + theta.norm());
    if (relative <= options.relative_step_tolerance) return finish(GaussNewtonStatus::kConverged, objective);
    bool accepted = false;
    VectorXd trial;
    double trial_objective = objective;
    double factor = 1.0;
    for (int h = 0; h <= options.max_halvings; ++h, factor *= 0.5) {
      trial = theta - factor * step;
      trial_objective = objective_at(trial, trial_residuals);
      if (std::isfinite(trial_objective) && trial_objective < objective) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No decrease along the Gauss-Newton direction: either at the minimum
      // to working precision, or the model cannot follow the data.
      return finish(relative <= options.stationary_step_tolerance ? GaussNewtonStatus::kConverged
                                                                   : GaussNewtonStatus::kStalled,
                    objective);
    }

    theta = trial;
    ++result.iterations;
    if (theta.cwiseAbs().maxCoeff() > options.parameter_bound) {
      return finish(GaussNewtonStatus::kRunaway, trial_objective);
    }
    problem.evaluate({theta.data(), static_cast<std::size_t>(p)},
                     {residuals.data(), static_cast<std::size_t>(r)},
                     {jacobian.data(), static_cast<std::size_t>(r * p)});
    objective = trial_objective;
    result.objective_trace.push_back(objective);
    if (!jacobian.allFinite()) return finish(GaussNewtonStatus::kNonFinite, objective);

    if (factor * full_step_norm <= options.relative_step_tolerance * (1.0 + theta.norm())) {
      return finish(GaussNewtonStatus::kConverged, objective);
    }
  }
  return finish(GaussNewtonStatus::kMaxIterations, objective);
}

}  // namespace pagraph
