#include "pagraph/theory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "pagraph/buckley_osthus.hpp"
#include "pagraph/errors.hpp"
#include "pagraph/graph.hpp"
#include "pagraph/parallel.hpp"
#include "pagraph/rng.hpp"

namespace pagraph {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,      -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

// Euler-Maclaurin remainder for a tail starting at x: f(x)/2 - f'(x)/12.
double em_correction(double f, double df) { return f / 2.0 - df / 12.0; }

constexpr int kDirectTerms = 32;

// sum_{i > d} i^(-s) for s > 1.
double power_tail(std::uint64_t d, double s) {
  double sum = 0.0;
  for (int k = 1; k <= kDirectTerms; ++k) sum += std::pow(static_cast<double>(d + k), -s);
  const double x = static_cast<double>(d + kDirectTerms + 1);
  const double f = std::pow(x, -s);
  const double df = -s * f / x;
  const double d3f = -s * (s + 1.0) * (s + 2.0) * f / (x * x * x);
  return sum + x * f / (s - 1.0) + em_correction(f, df) + d3f / 720.0;
}

// int_M^inf (x + j)^(1-a) x^-2 dx = M^-a / a * int_0^1 (1 + (j/M) v^(1/a))^(1-a) dv.
double pair_tail_integral(double a, double j, double lower) {
  const double c = j / lower;
  const double inner = boost::math::quadrature::gauss<double, 30>::integrate(
      [&](double v) { return std::pow(1.0 + c * std::pow(v, 1.0 / a), 1.0 - a); }, 0.0, 1.0);
  return std::pow(lower, -a) / a * inner;
}

// sum_{i >= start} (i + j)^(1-a) i^-2.
double pair_inner_sum(double a, double j, std::uint64_t start) {
  double sum = 0.0;
  for (int k = 0; k < kDirectTerms; ++k) {
    const double i = static_cast<double>(start + k);
    sum += std::pow(i + j, 1.0 - a) / (i * i);
  }
  const double x = static_cast<double>(start + kDirectTerms);
  const double f = std::pow(x + j, 1.0 - a) / (x * x);
  const double df = (1.0 - a) * std::pow(x + j, -a) / (x * x) - 2.0 * f / x;
  return sum + pair_tail_integral(a, j, x) + em_correction(f, df);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be a positive finite real");
  }
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

double log_beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("log_beta: arguments must be positive");
  return log_gamma(x) + log_gamma(y) - log_gamma(x + y);
}

void TheoryParams::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("theory: a must be > 0");
  if (m == 0) throw ParameterError("theory: m must be >= 1");
  if (!(n >= 0.0)) throw ParameterError("theory: n must be >= 0");
}

double expected_degree_count(const TheoryParams& params, std::uint64_t d) {
  params.validate();
  if (d < params.m) {
    throw DomainError("expected_degree_count: d = " + std::to_string(d) + " is below m = " +
                      std::to_string(params.m));
  }
  const double ma = static_cast<double>(params.m) * params.a;
  const double x = static_cast<double>(d - params.m) + ma;
  return params.n * std::exp(log_beta(x, params.a + 2.0) - log_beta(ma, params.a + 1.0));
}

double expected_edge_count(const TheoryParams& params, double d1, double d2) {
  params.validate();
  const auto m = static_cast<double>(params.m);
  if (!(d1 >= m) || !(d2 >= m)) throw DomainError("expected_edge_count: degrees must be >= m");
  const double a = params.a;
  const double ma = m * a;
  const double constant = m * a * (a + 1.0) * std::exp(log_gamma(ma + a + 1.0) - log_gamma(ma));
  return params.n * constant * std::pow(d1 + d2, 1.0 - a) / (d1 * d1 * d2 * d2);
}

ScalingReport prop1_scaling_check(const ScalingConfig& config) {
  if (!(config.a > 0.0 && config.a < 1.0)) throw ParameterError("prop1: a must lie in (0, 1)");
  if (config.sizes.size() < 2 || config.samples == 0) {
    throw ParameterError("prop1: need at least two sizes and one sample");
  }
  for (std::size_t i = 1; i < config.sizes.size(); ++i) {
    if (config.sizes[i] <= config.sizes[i - 1]) throw ParameterError("prop1: sizes must increase");
  }

  const std::size_t jobs = config.sizes.size() * config.samples;
  std::vector<MultiplicityReport> results(jobs);
  parallel_for(jobs, config.threads, [&](std::size_t job) {
    const std::size_t size_index = job / config.samples;
    const std::size_t sample = job % config.samples;
    BOParams params{config.a, config.m, config.sizes[size_index],
                    derive_seed(derive_seed(config.seed, size_index), sample)};
    results[job] = count_multiplicities(generate_bo(params));
  });

  ScalingReport report;
  std::vector<double> log_n;
  std::vector<double> log_log_n;
  std::vector<double> log_multi;
  std::vector<double> log_loops;
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    ScalingRow row;
    row.n = config.sizes[i];
    for (std::size_t k = 0; k < config.samples; ++k) {
      row.mean_loops += static_cast<double>(results[i * config.samples + k].loops);
      row.mean_multi_edges += static_cast<double>(results[i * config.samples + k].multi_edges);
    }
    row.mean_loops /= static_cast<double>(config.samples);
    row.mean_multi_edges /= static_cast<double>(config.samples);
    const double edges = static_cast<double>(config.m) * static_cast<double>(row.n);
    row.loop_fraction = row.mean_loops / edges;
    row.multi_fraction = row.mean_multi_edges / edges;
    report.rows.push_back(row);

    const double ln_n = std::log(static_cast<double>(row.n));
    log_n.push_back(ln_n);
    log_log_n.push_back(std::log(ln_n));
    log_multi.push_back(std::log(std::max(row.mean_multi_edges, 1e-300)));
    log_loops.push_back(std::log(std::max(row.mean_loops, 1e-300)));
  }
  report.multi_edge_slope = ols_slope(log_n, log_multi);
  report.loop_slope = ols_slope(log_log_n, log_loops);
  return report;
}

AppendixBReport appendix_b_check(const AppendixBConfig& config) {
  const double a = config.a;
  if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("appendix-b: a must be > 0");
  if (config.points.empty()) throw ParameterError("appendix-b: no test points");

  // int_1^inf (t + 1)^(1-a) t^-2 dt: T(j) ~ K j^-a once the inner sum starts at j.
  const double k_a = pair_tail_integral(a, 1.0, 1.0);

  AppendixBReport report;
  for (const auto& [d1, d2] : config.points) {
    if (d2 == 0 || d1 < d2) throw ParameterError("appendix-b: points need d1 >= d2 >= 1");
    const auto cutoff = static_cast<std::uint64_t>(std::floor(config.truncation_factor * static_cast<double>(d2)));
    if (cutoff < d1) {
      throw ParameterError("appendix-b: truncation at " + std::to_string(cutoff) +
                           " lies below d1 = " + std::to_string(d1) + "; raise the truncation factor");
    }

    double numerator = 0.0;
    for (std::uint64_t j = d2 + 1; j <= cutoff; ++j) {
      const double jd = static_cast<double>(j);
      numerator += pair_inner_sum(a, jd, std::max(j, d1 + 1)) / (jd * jd);
    }
    // j > cutoff >= d1: T(j) = K j^-a + 2^(-a) j^(-1-a) + O(j^(-2-a)).
    const double x = static_cast<double>(cutoff) + 0.5;
    const double tail = k_a * std::pow(x, -1.0 - a) / (1.0 + a);
    const double correction = std::pow(2.0, -a) * std::pow(x, -2.0 - a) / (2.0 + a);
    numerator += tail + correction;

    AppendixBPoint point;
    point.d1 = d1;
    point.d2 = d2;
    point.ratio_sum = numerator / (power_tail(d1, 2.0 + a) * power_tail(d2, 2.0 + a));
    const double x1 = static_cast<double>(d1);
    const double x2 = static_cast<double>(d2);
    point.shape = std::pow(x1 + x2, 1.0 - a) * std::pow(x1, a) * std::pow(x2, a);
    point.truncation_error = std::abs(correction) / numerator;
    if (point.truncation_error > config.truncation_tolerance) {
      throw ParameterError("appendix-b: truncation error estimate " + std::to_string(point.truncation_error) +
                           " exceeds the tolerance at (" + std::to_string(d1) + ", " + std::to_string(d2) + ")");
    }
    report.points.push_back(point);
  }

  double lo = report.points.front().ratio_sum / report.points.front().shape;
  double hi = lo;
  for (const auto& p : report.points) {
    const double r = p.ratio_sum / p.shape;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  report.constant = (lo + hi) / 2.0;
  for (auto& p : report.points) {
    p.relative_deviation = p.ratio_sum / (report.constant * p.shape) - 1.0;
    report.max_relative_deviation = std::max(report.max_relative_deviation, std::abs(p.relative_deviation));
  }
  return report;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> appendix_b_points(
    std::uint64_t d2_lo, std::uint64_t d2_hi, double ratio_lo, double ratio_hi, int per_decade) {
  if (d2_lo == 0 || d2_hi < d2_lo || !(ratio_lo >= 1.0) || ratio_hi < ratio_lo || per_decade < 1) {
    throw ParameterError("appendix-b: invalid point ranges");
  }
  auto log_steps = [per_decade](double lo, double hi) {
    std::vector<double> values;
    const double span = std::log10(hi / lo);
    const int steps = static_cast<int>(std::ceil(span * per_decade - 1e-9));
    for (int k = 0; k <= steps; ++k) {
      values.push_back(steps == 0 ? lo : lo * std::pow(hi / lo, static_cast<double>(k) / steps));
    }
    return values;
  };
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
  for (double d2 : log_steps(static_cast<double>(d2_lo), static_cast<double>(d2_hi))) {
    const auto d2i = static_cast<std::uint64_t>(std::llround(d2));
    for (double r : log_steps(ratio_lo, ratio_hi)) {
      const auto d1 = static_cast<std::uint64_t>(std::llround(r * static_cast<double>(d2i)));
      points.emplace_back(d1, d2i);
    }
  }
  return points;
}

}  // namespace pagraph
