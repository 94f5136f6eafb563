#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pagraph {

/// ln Gamma(x) for x > 0 by the Lanczos approximation (g = 7, nine
/// coefficients), with the reflection-free log form for large x. Relative
/// error below 1e-13 on [1e-3, 1e9] away from the zeros at x = 1, 2.
/// Throws DomainError for x <= 0.
double log_gamma(double x);

/// ln B(x, y) = ln Gamma(x) + ln Gamma(y) - ln Gamma(x + y).
double log_beta(double x, double y);

struct TheoryParams {
  double a = 1.0;
  std::uint64_t m = 1;
  double n = 1.0;

  void validate() const;
};

/// Leading term of E #(d) in H(a,m,n): n B(d - m + m a, a + 2) / B(m a, a + 1).
/// Throws DomainError for d < m.
double expected_degree_count(const TheoryParams& params, std::uint64_t d);

/// Leading term of E X(d1, d2):
/// n m a (a+1) Gamma(m a + a + 1) / Gamma(m a) (d1 + d2)^(1-a) / (d1^2 d2^2).
/// The multiplicative (1 + O(1/d1 + 1/d2 + d1 d2 / (d1 + d2)^2)) correction
/// is not modeled. Throws DomainError unless d1, d2 >= m.
double expected_edge_count(const TheoryParams& params, double d1, double d2);

struct ScalingConfig {
  double a = 0.5;
  std::uint64_t m = 2;
  std::vector<std::uint64_t> sizes;  ///< strictly increasing vertex counts
  std::uint64_t samples = 20;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct ScalingRow {
  std::uint64_t n = 0;
  double mean_loops = 0.0;
  double mean_multi_edges = 0.0;
  double loop_fraction = 0.0;   ///< mean loops / (m n)
  double multi_fraction = 0.0;  ///< mean multi-edges / (m n)
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  /// OLS slope of ln(mean multi-edges) against ln n; O(n^(1-a)) predicts 1 - a.
  double multi_edge_slope = 0.0;
  /// OLS slope of ln(mean loops) against ln ln n; O(ln n) predicts <= 1.
  double loop_slope = 0.0;
};

/// Monte-Carlo loop and multi-edge counts of H(a,m,n) over the given sizes.
/// Sample k of size index i uses seed derive_seed(derive_seed(seed, i), k).
/// Throws ParameterError unless 0 < a < 1 and sizes strictly increase.
ScalingReport prop1_scaling_check(const ScalingConfig& config);

struct AppendixBConfig {
  double a = 0.276;
  /// (d1, d2) points, each with d1 / d2 >= 1.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
  /// The outer sum over j runs to truncation_factor * d2 exactly; beyond that
  /// a tail integral is added, which needs truncation_factor * d2 >= d1.
  double truncation_factor = 1000.0;
  /// Largest acceptable estimated relative truncation error.
  double truncation_tolerance = 1e-3;
};

struct AppendixBPoint {
  std::uint64_t d1 = 0;
  std::uint64_t d2 = 0;
  double ratio_sum = 0.0;  ///< double tail sum / product of single tail sums
  double shape = 0.0;      ///< (d1 + d2)^(1-a) d1^a d2^a
  double relative_deviation = 0.0;
  double truncation_error = 0.0;
};

struct AppendixBReport {
  std::vector<AppendixBPoint> points;
  double constant = 0.0;  ///< c minimizing max |ratio / (c shape) - 1|
  double max_relative_deviation = 0.0;
};

/// Compares sum_{i >= j, i > d1, j > d2} (i+j)^(1-a) (ij)^-2 divided by
/// sum_{i > d1} i^(-2-a) sum_{j > d2} j^(-2-a) with the shape of the
/// cumulative edge approximant, up to one calibrated constant. Throws
/// ParameterError when the truncation point falls below d1 or the truncation
/// error estimate exceeds the tolerance.
AppendixBReport appendix_b_check(const AppendixBConfig& config);

/// Grid of test points: d2 and d1/d2 both log-spaced with `per_decade` steps
/// over [d2_lo, d2_hi] and [ratio_lo, ratio_hi].
std::vector<std::pair<std::uint64_t, std::uint64_t>> appendix_b_points(
    std::uint64_t d2_lo, std::uint64_t d2_hi, double ratio_lo, double ratio_hi, int per_decade);

}  // namespace pagraph
