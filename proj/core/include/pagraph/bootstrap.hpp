#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pagraph/fitting.hpp"
#include "pagraph/stats.hpp"

namespace pagraph {

struct BootstrapOptions {
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  FitOptions fit;
};

struct BootstrapSample {
  std::size_t iteration = 0;
  double a = 0.0;
  double b = 0.0;
  bool converged = false;
};

struct BootstrapReport {
  /// One entry per iteration, in iteration order.
  std::vector<BootstrapSample> samples;
  /// a of the converged refits, in iteration order.
  std::vector<double> estimates;
  /// Mean of (a_i - original)^2 over converged refits.
  double sigma_s2 = 0.0;
  double original = 0.0;
  double mean = 0.0;
  std::size_t iterations = 0;
  std::size_t diverged = 0;
};

/// Edge bootstrap. Each iteration draws edge_count() edges with replacement
/// from the degree-pair labels in `matrix`, rebuilds X~ on the grid of
/// `original`, divides by the original #~ and refits g on `domain`. Vertex
/// degrees are never recomputed. Iteration i uses derive_seed(seed, i).
/// Throws ParameterError for zero iterations or an edgeless matrix, FitError
/// if every refit diverges.
BootstrapReport bootstrap_edges(const EdgeDegreeMatrix& matrix, const RhoSurface& original,
                                const PairDomain& domain, double original_a,
                                const BootstrapOptions& options);

/// Vertex bootstrap. Each iteration draws vertex_count() degrees with
/// replacement from `histogram`, rebuilds #~ and refits f on `range`.
BootstrapReport bootstrap_vertices(const DegreeHistogram& histogram, const DegreeRange& range,
                                   double original_a, const BootstrapOptions& options);

}  // namespace pagraph
