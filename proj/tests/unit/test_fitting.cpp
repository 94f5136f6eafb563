#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pagraph/errors.hpp"
#include "pagraph/fitting.hpp"
#include "pagraph/rng.hpp"

namespace pagraph {
namespace {

std::vector<DegreeSample> exact_f(double a, double b, double lo, double hi) {
  std::vector<DegreeSample> s;
  for (double d = lo; d <= hi; d *= 1.3) s.push_back({std::floor(d), eval_f(a, b, std::floor(d))});
  return s;
}

std::vector<PairSample> exact_g(double a, double b) {
  std::vector<PairSample> s;
  for (double d2 = 5; d2 <= 200; d2 *= 1.5) {
    for (double r = 11; r <= 2000; r *= 1.7) s.push_back({std::floor(r * d2), d2, eval_g(a, b, std::floor(r * d2), d2)});
  }
  return s;
}

TEST(Approximants, Examples) {
  EXPECT_DOUBLE_EQ(eval_f(0, 1, 10), 0.1);
  EXPECT_DOUBLE_EQ(eval_f(1, 100, 10), 1.0);
  EXPECT_DOUBLE_EQ(eval_g(1, 3, 7, 11), 3.0 * 7 * 11);
  EXPECT_NEAR(eval_g(0.5, 2, 100, 4), 2 * std::pow(104, 0.5) * std::sqrt(400.0), 1e-10);
}

TEST(FitDegree, ExactRecovery) {
  const auto samples = exact_f(0.3, 100, 2, 5000);
  const FitResult fit = fit_degree(samples);
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.a, 0.3, 1e-6);
  EXPECT_NEAR(fit.b, 100, 1e-4);
  EXPECT_NEAR(fit.sigma2, 0.0, 1e-12);
  EXPECT_EQ(fit.points, samples.size());
}

TEST(FitEdges, ExactRecovery) {
  const auto samples = exact_g(0.3, 1e-7);
  const FitResult fit = fit_edges(samples);
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.a, 0.3, 1e-6);
  EXPECT_NEAR(fit.b / 1e-7, 1.0, 1e-5);
}

class AnyStart : public ::testing::TestWithParam<double> {};

TEST_P(AnyStart, RecoversFromInitialA) {
  FitOptions options;
  options.initial_a = GetParam();
  const FitResult f = fit_degree(exact_f(0.8, 40, 3, 3000), options);
  EXPECT_TRUE(f.converged);
  EXPECT_NEAR(f.a, 0.8, 1e-6);
  const FitResult g = fit_edges(exact_g(0.45, 2e-6), options);
  EXPECT_TRUE(g.converged);
  EXPECT_NEAR(g.a, 0.45, 1e-6);
  for (std::size_t i = 1; i < f.objective_trace.size(); ++i) {
    EXPECT_LE(f.objective_trace[i], f.objective_trace[i - 1]);
  }
}

INSTANTIATE_TEST_SUITE_P(Starts, AnyStart, ::testing::Values(0.05, 0.2, 0.5, 1.0, 2.0, 3.0));

TEST(Fitting, ScaleEquivariance) {
  // Noisy data, so the optimum is not the generating parameter.
  Rng rng(4);
  auto deg = exact_f(0.6, 500, 2, 4000);
  for (auto& s : deg) s.value *= 1 + 0.05 * (rng.uniform01() - 0.5);
  auto pairs = exact_g(0.35, 1e-5);
  for (auto& s : pairs) s.value *= 1 + 0.05 * (rng.uniform01() - 0.5);
  const FitResult f = fit_degree(deg);
  const FitResult g = fit_edges(pairs);
  for (double c : {1e-3, 7.0, 1e4}) {
    auto deg_c = deg;
    for (auto& s : deg_c) s.value *= c;
    auto pairs_c = pairs;
    for (auto& s : pairs_c) s.value *= c;
    const FitResult fc = fit_degree(deg_c);
    const FitResult gc = fit_edges(pairs_c);
    EXPECT_NEAR(fc.a, f.a, 1e-7);
    EXPECT_NEAR(fc.b / (c * f.b), 1.0, 1e-6);
    EXPECT_NEAR(gc.a, g.a, 1e-7);
    EXPECT_NEAR(gc.b / (c * g.b), 1.0, 1e-6);
  }
}

TEST(Fitting, InputValidation) {
  const std::vector<DegreeSample> one{{10, 1}};
  EXPECT_THROW(fit_degree(one), ParameterError);
  const std::vector<DegreeSample> negative{{10, 1}, {20, -1}};
  EXPECT_THROW(fit_degree(negative), ParameterError);
  const std::vector<PairSample> nan_pair{{100, 2, 1}, {200, 3, std::nan("")}};
  EXPECT_THROW(fit_edges(nan_pair), ParameterError);
}

TEST(LogLogRegression, PowerLawSlopes) {
  std::vector<DegreeSample> raw, cumulative;
  for (double d = 1; d <= 1e4; d *= 2) raw.push_back({d, std::pow(d, -2.0)});
  const LineFit fit = loglog_regression(raw);
  EXPECT_NEAR(fit.slope, -2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-12);
  // Integrating a power law lowers its exponent by one.
  for (double d = 1; d <= 1e4; d *= 2) cumulative.push_back({d, std::pow(d, -3.0) / 3});
  for (auto& s : raw) s.value = std::pow(s.degree, -4.0);
  EXPECT_NEAR(loglog_regression(raw).slope - loglog_regression(cumulative).slope, -1.0, 1e-12);
  const std::vector<DegreeSample> zero{{1, 1}, {2, 0}};
  EXPECT_THROW(loglog_regression(zero), ParameterError);
}

LogGrid grid_to(std::uint64_t d_max) { return log_grid(1.01, d_max); }

TEST(Domains, RangeAndPairs) {
  const LogGrid grid = grid_to(10000);
  const DegreeRange r = make_degree_range(grid, 10, 1000);
  ASSERT_FALSE(r.grid_points.empty());
  EXPECT_EQ(r.grid_points.front(), 10u);
  EXPECT_LE(r.grid_points.back(), 1000u);
  EXPECT_GT(grid.points[r.grid_indices.back() + 1], 1000u);
  for (std::size_t k = 0; k < r.grid_points.size(); ++k) {
    EXPECT_EQ(grid.points[r.grid_indices[k]], r.grid_points[k]);
  }
  const PairDomain domain = make_pair_domain(grid, r, 10.0);
  EXPECT_FALSE(domain.pairs.empty());
  for (auto [hi, lo] : domain.pairs) EXPECT_GT(grid.points[hi], 10 * grid.points[lo]);
  // 100 / 10 is exactly the cutoff, so the pair is excluded.
  const auto idx = [&](std::uint64_t d) {
    return static_cast<std::size_t>(std::lower_bound(grid.points.begin(), grid.points.end(), d) - grid.points.begin());
  };
  for (auto [hi, lo] : domain.pairs) EXPECT_FALSE(hi == idx(100) && lo == idx(10));

  EXPECT_THROW(make_degree_range(grid, 0, 10), ParameterError);
  EXPECT_THROW(make_degree_range(grid, 50, 50), ParameterError);
  EXPECT_THROW(make_degree_range(grid, 20000, 30000), ParameterError);
}

// Surface whose #~ follows f and whose X~ makes rho~ follow g, up to integer
// rounding kept small by a large scale.
RhoSurface synthetic_surface(double a1, double a2) {
  LogGrid grid = grid_to(100000);
  std::vector<std::uint64_t> cum;
  for (auto d : grid.points) cum.push_back(static_cast<std::uint64_t>(std::llround(1e15 * std::pow(double(d), -1 - a1))));
  const std::size_t t = grid.points.size();
  std::vector<std::uint64_t> values(t * t, 0);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double rho = eval_g(a2, 1e-13, double(grid.points[i]), double(grid.points[j]));
      values[i * t + j] = static_cast<std::uint64_t>(std::llround(rho * double(cum[i]) * double(cum[j])));
    }
  }
  return RhoSurface(grid, cum, CumulativeEdgeTable(grid.points, std::move(values)));
}

TEST(SelectRange, ExactDataAnyWindowRecovers) {
  const RhoSurface surface = synthetic_surface(0.4, 0.3);
  RangeSelectionOptions options;
  options.window = 2.0;
  options.threads = 1;
  const RangeSelection sel = select_range(surface, options);
  EXPECT_GT(sel.candidates, 1u);
  EXPECT_TRUE(sel.degree_fit.converged);
  EXPECT_TRUE(sel.edge_fit.converged);
  EXPECT_NEAR(sel.degree_fit.a, 0.4, 1e-4);
  EXPECT_NEAR(sel.edge_fit.a, 0.3, 1e-4);
  EXPECT_EQ(sel.window, 2.0) << sel.range.lo << " " << sel.range.hi << " " << sel.log_lo;

  // Any explicit window gives the same estimates.
  for (std::uint64_t lo : {10u, 100u, 1000u}) {
    const DegreeRange r = make_degree_range(surface.grid(), lo, lo * 100);
    const FitResult f = fit_degree(degree_samples(surface, r));
    EXPECT_NEAR(f.a, 0.4, 1e-4);
    EXPECT_NEAR(f.b / sel.degree_fit.b, 1.0, 1e-3);
    const FitResult g = fit_edges(pair_samples(surface, make_pair_domain(surface.grid(), r, 10)));
    EXPECT_NEAR(g.a, 0.3, 1e-4);
  }
}

TEST(SelectRange, ThreadInvariant) {
  const RhoSurface surface = synthetic_surface(0.7, 0.5);
  RangeSelectionOptions options;
  options.threads = 1;
  const RangeSelection one = select_range(surface, options);
  options.threads = 4;
  const RangeSelection four = select_range(surface, options);
  EXPECT_EQ(one.range.lo, four.range.lo);
  EXPECT_EQ(one.range.hi, four.range.hi);
  EXPECT_EQ(one.degree_fit.a, four.degree_fit.a);
  EXPECT_EQ(one.edge_fit.a, four.edge_fit.a);
}

TEST(SelectRange, TooSmallSpanFails) {
  const LogGrid grid = grid_to(1);
  const RhoSurface surface(grid, {0}, CumulativeEdgeTable(grid.points, {0}));
  EXPECT_THROW(select_range(surface, {}), FitError);
}

TEST(Samples, UndefinedValuesRejected) {
  const LogGrid grid = grid_to(100);
  std::vector<std::uint64_t> cum(grid.points.size(), 0);
  cum[0] = 5;
  const RhoSurface surface(grid, cum, CumulativeEdgeTable(grid.points, std::vector<std::uint64_t>(cum.size() * cum.size(), 0)));
  const DegreeRange r = make_degree_range(grid, 1, 100);
  EXPECT_THROW(degree_samples(surface, r), ParameterError);
  EXPECT_THROW(pair_samples(surface, make_pair_domain(grid, r, 10)), ParameterError);
}

}  // namespace
}  // namespace pagraph
