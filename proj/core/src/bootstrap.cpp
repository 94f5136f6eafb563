#include "pagraph/bootstrap.hpp"

#include <limits>
#include <optional>

#include "pagraph/errors.hpp"
#include "pagraph/parallel.hpp"
#include "pagraph/rng.hpp"

namespace pagraph {

namespace {

void check_iterations(const BootstrapOptions& options) {
  if (options.iterations == 0) throw ParameterError("bootstrap: iterations must be positive");
}

BootstrapReport summarize(std::vector<BootstrapSample> samples, double original) {
  BootstrapReport report;
  report.original = original;
  report.iterations = samples.size();
  double sum = 0.0;
  double squares = 0.0;
  for (const BootstrapSample& s : samples) {
    if (!s.converged) {
      ++report.diverged;
      continue;
    }
    report.estimates.push_back(s.a);
    sum += s.a;
    squares += (s.a - original) * (s.a - original);
  }
  if (report.estimates.empty()) throw FitError("bootstrap: every refit diverged");
  const auto kept = static_cast<double>(report.estimates.size());
  report.mean = sum / kept;
  report.sigma_s2 = squares / kept;
  report.samples = std::move(samples);
  return report;
}

FitOptions seeded(const FitOptions& fit, double original_a) {
  FitOptions out = fit;
  if (!out.initial_a) out.initial_a = original_a;
  return out;
}

}  // namespace

BootstrapReport bootstrap_edges(const EdgeDegreeMatrix& matrix, const RhoSurface& original,
                                const PairDomain& domain, double original_a,
                                const BootstrapOptions& options) {
  check_iterations(options);
  const std::vector<DegreeCell> lower = edge_cells_lower(matrix);
  // Each edge becomes one slot naming its lower-triangle cell.
  std::vector<std::uint32_t> slots;
  for (std::size_t c = 0; c < lower.size(); ++c) {
    const std::uint64_t edges = lower[c].d1 == lower[c].d2 ? lower[c].count / 2 : lower[c].count;
    slots.insert(slots.end(), edges, static_cast<std::uint32_t>(c));
  }
  if (slots.empty()) throw ParameterError("bootstrap_edges: no edges to resample");

  const FitOptions fit = seeded(options.fit, original_a);
  const auto& thresholds = original.grid().points;
  const std::vector<std::uint64_t> tails(original.cumulative_degree().begin(),
                                         original.cumulative_degree().end());

  std::vector<BootstrapSample> samples(options.iterations);
  parallel_for(options.iterations, options.threads, [&](std::size_t i) {
    Rng rng(derive_seed(options.seed, i));
    std::vector<std::uint64_t> values(lower.size(), 0);
    for (std::size_t k = 0; k < slots.size(); ++k) ++values[slots[rng.below(slots.size())]];
    for (std::size_t c = 0; c < lower.size(); ++c) {
      if (lower[c].d1 == lower[c].d2) values[c] *= 2;
    }
    RhoSurface surface(original.grid(), tails, cumulative_edges_from_lower(lower, values, thresholds));
    BootstrapSample& out = samples[i];
    out.iteration = i;
    std::vector<PairSample> pairs;
    try {
      pairs = pair_samples(surface, domain);
    } catch (const ParameterError&) {
      return;
    }
    const FitResult result = fit_edges(pairs, fit);
    out.a = result.a;
    out.b = result.b;
    out.converged = result.converged;
  });
  return summarize(std::move(samples), original_a);
}

BootstrapReport bootstrap_vertices(const DegreeHistogram& histogram, const DegreeRange& range,
                                   double original_a, const BootstrapOptions& options) {
  check_iterations(options);
  std::vector<std::uint32_t> degrees;
  degrees.reserve(histogram.vertex_count());
  const auto counts = histogram.counts();
  for (std::size_t d = 0; d < counts.size(); ++d) {
    degrees.insert(degrees.end(), counts[d], static_cast<std::uint32_t>(d));
  }
  if (degrees.empty()) throw ParameterError("bootstrap_vertices: no vertices to resample");

  const FitOptions fit = seeded(options.fit, original_a);
  std::vector<BootstrapSample> samples(options.iterations);
  parallel_for(options.iterations, options.threads, [&](std::size_t i) {
    Rng rng(derive_seed(options.seed, i));
    std::vector<std::uint64_t> resampled(counts.size(), 0);
    for (std::size_t k = 0; k < degrees.size(); ++k) ++resampled[degrees[rng.below(degrees.size())]];
    const CumulativeDegree tail{DegreeHistogram(std::move(resampled))};
    BootstrapSample& out = samples[i];
    out.iteration = i;
    std::vector<DegreeSample> points;
    for (std::uint64_t d : range.grid_points) {
      const std::uint64_t t = tail.at(d);
      if (t == 0) return;
      points.push_back({static_cast<double>(d), static_cast<double>(t)});
    }
    const FitResult result = fit_degree(points, fit);
    out.a = result.a;
    out.b = result.b;
    out.converged = result.converged;
  });
  return summarize(std::move(samples), original_a);
}

}  // namespace pagraph
