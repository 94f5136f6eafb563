#include "pagraph/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "pagraph/errors.hpp"
#include "pagraph/parallel.hpp"

namespace pagraph {

namespace {

// Tolerance for comparing degrees against powers of ten computed in floating point.
constexpr double kLogEpsilon = 1e-9;

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  bool ok = false;
};

Line least_squares_line(std::span<const double> x, std::span<const double> y) {
  Line line;
  if (x.size() < 2) return line;
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return line;
  line.slope = sxy / sxx;
  line.intercept = my - line.slope * mx;
  line.ok = true;
  return line;
}

FitResult finish_fit(const GaussNewtonResult& solved, std::size_t points) {
  FitResult fit;
  fit.a = solved.theta[0];
  fit.b = std::exp(solved.theta[1]);
  fit.objective = solved.objective;
  fit.iterations = solved.iterations;
  fit.status = solved.status;
  fit.converged = solved.converged() && std::isfinite(fit.a) && std::isfinite(fit.b) && fit.b > 0.0;
  fit.points = points;
  fit.objective_trace = solved.objective_trace;
  return fit;
}

void check_values(auto samples, const char* what) {
  if (samples.size() < 2) throw ParameterError(std::string(what) + ": need at least two samples");
  for (const auto& s : samples) {
    if (!(s.value >= 0.0) || !std::isfinite(s.value)) {
      throw ParameterError(std::string(what) + ": sample values must be finite and non-negative");
    }
  }
}

}  // namespace

double eval_f(double a, double b, double d) { return b * std::pow(d, -1.0 - a); }

double eval_g(double a, double b, double d1, double d2) {
  return b * std::pow(d1 + d2, 1.0 - a) * std::pow(d1, a) * std::pow(d2, a);
}

LineFit loglog_regression(std::span<const DegreeSample> samples) {
  std::vector<double> x;
  std::vector<double> y;
  for (const DegreeSample& s : samples) {
    if (!(s.value > 0.0) || !(s.degree > 0.0)) {
      throw ParameterError("loglog_regression: degrees and values must be positive");
    }
    x.push_back(std::log10(s.degree));
    y.push_back(std::log10(s.value));
  }
  const Line line = least_squares_line(x, y);
  if (!line.ok) throw ParameterError("loglog_regression: need at least two distinct degrees");
  return {line.slope, line.intercept};
}

FitResult fit_degree(std::span<const DegreeSample> samples, const FitOptions& options) {
  check_values(samples, "fit_degree");
  const std::size_t count = samples.size();
  std::vector<double> log_d(count);
  std::vector<double> root(count);
  for (std::size_t i = 0; i < count; ++i) {
    log_d[i] = std::log(samples[i].degree);
    root[i] = std::sqrt(samples[i].value);
  }

  double a0 = options.initial_a.value_or(1.0);
  if (!options.initial_a) {
    std::vector<double> x;
    std::vector<double> y;
    for (const DegreeSample& s : samples) {
      if (s.value > 0.0) {
        x.push_back(std::log10(s.degree));
        y.push_back(std::log10(s.value));
      }
    }
    const Line line = least_squares_line(x, y);
    if (line.ok) a0 = -line.slope - 1.0;
  }
  double log_b0 = 0.0;
  if (options.initial_b) {
    log_b0 = std::log(*options.initial_b);
  } else {
    const double mid = 0.5 * (log_d.front() + log_d.back());
    std::size_t best = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (samples[i].value > 0.0 &&
          (samples[best].value <= 0.0 || std::abs(log_d[i] - mid) < std::abs(log_d[best] - mid))) {
        best = i;
      }
    }
    log_b0 = samples[best].value > 0.0 ? std::log(samples[best].value) + (1.0 + a0) * log_d[best] : 0.0;
  }

  LeastSquaresProblem problem;
  problem.residual_count = count;
  problem.parameter_count = 2;
  problem.evaluate = [&](std::span<const double> theta, std::span<double> r, std::span<double> jac) {
    for (std::size_t i = 0; i < count; ++i) {
      const double model = std::exp(0.5 * (theta[1] - (1.0 + theta[0]) * log_d[i]));
      r[i] = root[i] - model;
      if (!jac.empty()) {
        jac[2 * i] = 0.5 * log_d[i] * model;
        jac[2 * i + 1] = -0.5 * model;
      }
    }
  };
  FitResult fit = finish_fit(gauss_newton(problem, {a0, log_b0}, options.solver), count);
  double sum = 0.0;
  for (const DegreeSample& s : samples) {
    const double diff = eval_f(fit.a, fit.b, s.degree) - s.value;
    sum += diff * diff;
  }
  fit.sigma2 = sum / static_cast<double>(count);
  return fit;
}

FitResult fit_edges(std::span<const PairSample> samples, const FitOptions& options) {
  check_values(samples, "fit_edges");
  const std::size_t count = samples.size();
  // ln sqrt g = (ln b + ln(d1 + d2) + a * mix) / 2 with mix = ln d1 + ln d2 - ln(d1 + d2).
  std::vector<double> log_sum(count);
  std::vector<double> mix(count);
  std::vector<double> root(count);
  for (std::size_t i = 0; i < count; ++i) {
    const PairSample& s = samples[i];
    log_sum[i] = std::log(s.d1 + s.d2);
    mix[i] = std::log(s.d1) + std::log(s.d2) - log_sum[i];
    root[i] = std::sqrt(s.value);
  }

  double a0 = options.initial_a.value_or(1.0);
  double log_b0 = options.initial_b ? std::log(*options.initial_b) : 0.0;
  if (!options.initial_a || !options.initial_b) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < count; ++i) {
      if (samples[i].value > 0.0) {
        x.push_back(mix[i]);
        y.push_back(std::log(samples[i].value) - log_sum[i]);
      }
    }
    const Line line = least_squares_line(x, y);
    if (!options.initial_a && line.ok) a0 = line.slope;
    if (!options.initial_b) {
      if (!options.initial_a && line.ok) {
        log_b0 = line.intercept;
      } else if (!x.empty()) {
        double mean = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) mean += y[i] - a0 * x[i];
        log_b0 = mean / static_cast<double>(x.size());
      }
    }
  }

  LeastSquaresProblem problem;
  problem.residual_count = count;
  problem.parameter_count = 2;
  problem.evaluate = [&](std::span<const double> theta, std::span<double> r, std::span<double> jac) {
    for (std::size_t i = 0; i < count; ++i) {
      const double model = std::exp(0.5 * (theta[1] + log_sum[i] + theta[0] * mix[i]));
      r[i] = root[i] - model;
      if (!jac.empty()) {
        jac[2 * i] = -0.5 * mix[i] * model;
        jac[2 * i + 1] = -0.5 * model;
      }
    }
  };
  FitResult fit = finish_fit(gauss_newton(problem, {a0, log_b0}, options.solver), count);
  double sum = 0.0;
  for (const PairSample& s : samples) {
    const double diff = eval_g(fit.a, fit.b, s.d1, s.d2) - s.value;
    sum += diff * diff;
  }
  fit.sigma2 = sum / static_cast<double>(count);
  return fit;
}

DegreeRange make_degree_range(const LogGrid& grid, std::uint64_t lo, std::uint64_t hi) {
  if (lo == 0 || lo >= hi) throw ParameterError("degree range needs 1 <= lo < hi");
  DegreeRange range;
  range.lo = lo;
  range.hi = hi;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    if (grid.points[i] >= lo && grid.points[i] <= hi) {
      range.grid_indices.push_back(i);
      range.grid_points.push_back(grid.points[i]);
    }
  }
  if (range.grid_points.empty()) {
    throw ParameterError("degree range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                         "] contains no grid point");
  }
  return range;
}

PairDomain make_pair_domain(const LogGrid& grid, const DegreeRange& range, double ratio_cutoff) {
  PairDomain domain;
  domain.ratio_cutoff = ratio_cutoff;
  for (std::size_t hi : range.grid_indices) {
    for (std::size_t lo : range.grid_indices) {
      if (lo >= hi) break;
      if (static_cast<double>(grid.points[hi]) > ratio_cutoff * static_cast<double>(grid.points[lo])) {
        domain.pairs.emplace_back(hi, lo);
      }
    }
  }
  return domain;
}

std::vector<DegreeSample> degree_samples(const RhoSurface& surface, const DegreeRange& range) {
  std::vector<DegreeSample> samples;
  samples.reserve(range.grid_indices.size());
  for (std::size_t idx : range.grid_indices) {
    const std::uint64_t tail = surface.cumulative_degree()[idx];
    if (tail == 0) {
      throw ParameterError("cumulative degree count vanishes at d = " +
                           std::to_string(surface.grid().points[idx]));
    }
    samples.push_back({static_cast<double>(surface.grid().points[idx]), static_cast<double>(tail)});
  }
  return samples;
}

std::vector<PairSample> pair_samples(const RhoSurface& surface, const PairDomain& domain) {
  std::vector<PairSample> samples;
  samples.reserve(domain.pairs.size());
  const auto& points = surface.grid().points;
  for (const auto& [i, j] : domain.pairs) {
    const auto rho = surface.rho(i, j);
    if (!rho) {
      throw ParameterError("rho is undefined at (" + std::to_string(points[i]) + ", " +
                           std::to_string(points[j]) + ")");
    }
    samples.push_back({static_cast<double>(points[i]), static_cast<double>(points[j]), *rho});
  }
  return samples;
}

RangeSelection select_range(const RhoSurface& surface, const RangeSelectionOptions& options) {
  if (!(options.window > 0.0) || !(options.step > 0.0) || !(options.ratio_cutoff >= 1.0)) {
    throw ParameterError("range selection: window, step must be > 0 and ratio cutoff >= 1");
  }
  const LogGrid& grid = surface.grid();
  std::uint64_t top = 0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    if (surface.cumulative_degree()[i] > 0) top = grid.points[i];
  }
  if (top < 2) throw FitError("range selection: no degrees with a positive tail count");
  const double top_log = std::log10(static_cast<double>(top));

  struct Candidate {
    double log_lo = 0.0;
    DegreeRange range;
    PairDomain domain;
    FitResult degree_fit;
    FitResult edge_fit;
    bool usable = false;
  };

  RangeSelection best;
  std::optional<RangeSelection> fallback;
  std::size_t evaluated = 0;
  for (double window = options.window; window >= options.min_window - kLogEpsilon;
       window -= options.shrink_step) {
    std::vector<Candidate> candidates;
    const double log_min = std::log10(static_cast<double>(std::max<std::uint64_t>(options.min_degree, 1)));
    for (auto k = static_cast<int>(std::ceil(log_min / options.step - kLogEpsilon));; ++k) {
      const double log_lo = k * options.step;
      if (log_lo + window > top_log + kLogEpsilon) break;
      const auto lo = static_cast<std::uint64_t>(std::ceil(std::pow(10.0, log_lo) - kLogEpsilon));
      const auto hi = static_cast<std::uint64_t>(std::floor(std::pow(10.0, log_lo + window) + kLogEpsilon));
      Candidate c;
      c.log_lo = log_lo;
      try {
        c.range = make_degree_range(grid, std::max<std::uint64_t>(lo, 1), hi);
      } catch (const ParameterError&) {
        continue;
      }
      c.domain = make_pair_domain(grid, c.range, options.ratio_cutoff);
      if (c.range.grid_points.size() < options.min_points || c.domain.pairs.size() < options.min_pairs) continue;
      candidates.push_back(std::move(c));
    }

    parallel_for(candidates.size(), options.threads, [&](std::size_t i) {
      Candidate& c = candidates[i];
      const auto degrees = degree_samples(surface, c.range);
      const auto pairs = pair_samples(surface, c.domain);
      c.degree_fit = fit_degree(degrees, options.fit);
      c.edge_fit = fit_edges(pairs, options.fit);
      c.usable = c.degree_fit.converged && c.edge_fit.converged;
    });
    evaluated += candidates.size();

    const Candidate* chosen = nullptr;
    double chosen_product = std::numeric_limits<double>::infinity();
    for (const Candidate& c : candidates) {
      if (!c.usable) continue;
      const double product = c.degree_fit.objective * c.edge_fit.objective;
      if (product < chosen_product) {
        chosen_product = product;
        chosen = &c;
      }
    }
    if (chosen) {
      best.range = chosen->range;
      best.domain = chosen->domain;
      best.degree_fit = chosen->degree_fit;
      best.edge_fit = chosen->edge_fit;
      best.window = window;
      best.log_lo = chosen->log_lo;
      best.product = chosen_product;
      best.candidates = evaluated;
      return best;
    }
    if (!fallback) {
      const Candidate* degree_only = nullptr;
      for (const Candidate& c : candidates) {
        if (c.degree_fit.converged &&
            (!degree_only || c.degree_fit.objective < degree_only->degree_fit.objective)) {
          degree_only = &c;
        }
      }
      if (degree_only) {
        fallback = RangeSelection{degree_only->range,      degree_only->domain,
                                  degree_only->degree_fit, degree_only->edge_fit,
                                  window,                  degree_only->log_lo,
                                  degree_only->degree_fit.objective * degree_only->edge_fit.objective,
                                  0};
      }
    }
    if (!options.shrink) break;
  }
  if (fallback) {
    fallback->candidates = evaluated;
    return *fallback;
  }
  throw FitError("range selection: no window with a convergent fit");
}

}  // namespace pagraph
