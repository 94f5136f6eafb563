#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pagraph/graph.hpp"

namespace pagraph {

struct GdsParams {
  std::uint64_t n = 1;
  double gamma = 2.5;  ///< P(d) proportional to d^-gamma, gamma > 1
  /// Approximate edge count to aim for. When set, the degree cap is lowered
  /// until the expected edge count is within 5% of it.
  std::optional<std::uint64_t> target_edges;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DegreeSequence {
  std::vector<std::uint32_t> degrees;
  std::uint64_t degree_cap = 0;  ///< largest degree the law could produce
  double expected_edges = 0.0;   ///< n * E[d] / 2 under the truncated law
};

/// I.i.d. degrees from the power law truncated to [1, cap]. The cap starts at
/// the natural cutoff n^(1/(gamma-1)) and is reduced if target_edges asks for
/// fewer edges; a target more than 5% above what the natural cap yields is a
/// ParameterError. An odd degree sum is fixed by incrementing one uniformly
/// chosen entry.
DegreeSequence sample_power_law_degrees(const GdsParams& params);

/// Uniform stub matching: vertex v contributes degrees[v] stubs, the stub list
/// is shuffled and consecutive pairs become edges. Loops and parallel edges
/// are kept. Throws ParameterError on an odd degree sum.
Graph generate_configuration(std::span<const std::uint32_t> degrees, std::uint64_t seed);

struct HkParams {
  std::uint64_t n = 2;
  std::uint64_t m = 1;
  double triad_probability = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Holme-Kim growth. Vertices 0..m form a complete seed graph. Every later
/// vertex adds m edges to distinct targets: the first by degree-preferential
/// choice, each further one with probability p_t to a uniform neighbor of the
/// most recent preferential target (falling back to a preferential step when
/// every such neighbor is already linked), otherwise preferentially.
/// Edge count: m*(m+1)/2 + m*(n - m - 1).
Graph generate_holme_kim(const HkParams& params);

}  // namespace pagraph
