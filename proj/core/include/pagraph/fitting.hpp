#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pagraph/gauss_newton.hpp"
#include "pagraph/stats.hpp"

namespace pagraph {

/// f(d) = b d^(-1-a): the cumulative degree approximant.
double eval_f(double a, double b, double d);

/// g(d1, d2) = b (d1 + d2)^(1-a) d1^a d2^a: the cumulative edge approximant.
double eval_g(double a, double b, double d1, double d2);

struct DegreeSample {
  double degree = 0.0;
  double value = 0.0;
};

struct PairSample {
  double d1 = 0.0;
  double d2 = 0.0;
  double value = 0.0;
};

struct FitOptions {
  std::optional<double> initial_a;
  std::optional<double> initial_b;
  GaussNewtonOptions solver;
};

struct FitResult {
  double a = 0.0;
  double b = 0.0;
  /// Mean squared raw-scale deviation (model - data)^2 over the domain.
  double sigma2 = 0.0;
  /// Mean squared sqrt-scale residual, the minimized objective.
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  GaussNewtonStatus status = GaussNewtonStatus::kMaxIterations;
  std::size_t points = 0;
  std::vector<double> objective_trace;
};

/// Minimizes mean (sqrt(value) - sqrt(f(d)))^2 over (a, ln b). Values must be
/// non-negative; at least two samples are required. Without explicit initial
/// values, a starts from the log-log regression slope (a = -slope - 1) and b
/// from matching f to the sample nearest the geometric midpoint.
FitResult fit_degree(std::span<const DegreeSample> samples, const FitOptions& options = {});

/// Minimizes mean (sqrt(value) - sqrt(g(d1, d2)))^2 over (a, ln b). Without
/// explicit initial values, (a, ln b) start from the least-squares solution of
/// ln value - ln(d1 + d2) = ln b + a ln(d1 d2 / (d1 + d2)) on positive samples.
FitResult fit_edges(std::span<const PairSample> samples, const FitOptions& options = {});

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// OLS of log10 value on log10 degree. Throws ParameterError on non-positive
/// values or fewer than two distinct degrees.
LineFit loglog_regression(std::span<const DegreeSample> samples);

/// D1: grid points of Delta within [lo, hi].
struct DegreeRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::size_t> grid_indices;
  std::vector<std::uint64_t> grid_points;
};

/// D2: pairs of D1 points with d1 / d2 > ratio_cutoff, stored as grid indices
/// (larger degree first).
struct PairDomain {
  double ratio_cutoff = 10.0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Throws ParameterError if lo >= hi or no grid point lies in [lo, hi].
DegreeRange make_degree_range(const LogGrid& grid, std::uint64_t lo, std::uint64_t hi);
PairDomain make_pair_domain(const LogGrid& grid, const DegreeRange& range, double ratio_cutoff);

/// #~ at the points of D1. Throws ParameterError if #~ vanishes at any of them.
std::vector<DegreeSample> degree_samples(const RhoSurface& surface, const DegreeRange& range);
/// rho~ on D2. Throws ParameterError where rho~ is undefined.
std::vector<PairSample> pair_samples(const RhoSurface& surface, const PairDomain& domain);

struct RangeSelectionOptions {
  /// Window length in decades; shrunk when no window of this length fits.
  double window = 3.0;
  /// Offset between consecutive window starts, in decades.
  double step = 0.1;
  double ratio_cutoff = 10.0;
  bool shrink = true;
  double shrink_step = 0.1;
  double min_window = 1.2;
  /// Windows start at or above this degree. The approximants describe degrees
  /// d >= m only; callers typically pass modal_degree() of the histogram.
  std::uint64_t min_degree = 1;
  std::size_t min_points = 5;
  std::size_t min_pairs = 10;
  unsigned threads = 0;
  FitOptions fit;
};

struct RangeSelection {
  DegreeRange range;
  PairDomain domain;
  FitResult degree_fit;
  FitResult edge_fit;
  double window = 0.0;
  double log_lo = 0.0;
  /// degree_fit.objective * edge_fit.objective.
  double product = 0.0;
  std::size_t candidates = 0;
};

/// Slides a window of `window` decades over the grid in `step` increments
/// (starts at multiples of step), restricted to degrees where #~ > 0, fits
/// both approximants in every window, and keeps the window whose product of
/// optimized objectives is smallest among those where both fits converged.
/// If none qualifies and shrink is set, retries with shorter windows down to
/// min_window. If no window of any length has both fits convergent, falls
/// back to the first window length with a convergent degree fit and keeps the
/// window with the smallest degree objective; edge_fit then reports the
/// divergence. Throws FitError when not even a degree fit converges.
RangeSelection select_range(const RhoSurface& surface, const RangeSelectionOptions& options);

}  // namespace pagraph
