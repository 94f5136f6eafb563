#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pagraph {

/// A nonlinear least-squares problem in p parameters with r residuals.
/// `evaluate` fills residuals (length r) and, when `jacobian` is non-empty,
/// the row-major r x p Jacobian of the residuals.
struct LeastSquaresProblem {
  std::size_t residual_count = 0;
  std::size_t parameter_count = 0;
  std::function<void(std::span<const double> theta, std::span<double> residuals,
                     std::span<double> jacobian)>
      evaluate;
};

struct GaussNewtonOptions {
  int max_iterations = 100;
  int max_halvings = 30;
  double relative_step_tolerance = 1e-10;
  /// Relative size of the undamped step below which a failed line search is
  /// read as having reached the minimum rather than as divergence.
  double stationary_step_tolerance = 1e-6;
  /// Parameters whose magnitude exceeds this are treated as runaway.
  double parameter_bound = 1e6;
};

enum class GaussNewtonStatus { kConverged, kMaxIterations, kStalled, kNonFinite, kRunaway };

struct GaussNewtonResult {
  std::vector<double> theta;
  /// Mean squared residual at theta.
  double objective = 0.0;
  /// Accepted steps.
  int iterations = 0;
  GaussNewtonStatus status = GaussNewtonStatus::kMaxIterations;
  /// Objective at the start and after every accepted step.
  std::vector<double> objective_trace;
  /// Number of steps solved with the diagonal-regularized normal equations.
  int regularized_steps = 0;

  bool converged() const noexcept { return status == GaussNewtonStatus::kConverged; }
};

/// Damped Gauss-Newton: theta <- theta - s (J^T J)^-1 J^T r, with s halved
/// until the mean squared residual decreases (at most max_halvings times).
/// Stops when ||step|| <= tol (1 + ||theta||). A singular J^T J is replaced by
/// J^T J + lambda diag(J^T J) + lambda I for growing lambda.
GaussNewtonResult gauss_newton(const LeastSquaresProblem& problem, std::vector<double> initial,
                               const GaussNewtonOptions& options = {});

const char* to_string(GaussNewtonStatus status) noexcept;

}  // namespace pagraph
