#pragma once

#include <cstdint>
#include <vector>

#include "pagraph/graph.hpp"
#include "pagraph/rng.hpp"

namespace pagraph {

struct BOParams {
  double a = 1.0;        ///< initial attractiveness, > 0
  std::uint64_t m = 1;   ///< edges per vertex, >= 1
  std::uint64_t n = 1;   ///< final vertex count, >= 1
  std::uint64_t seed = 0;

  /// Throws ParameterError on a <= 0, m == 0, n == 0, or m*n >= 2^31.
  void validate() const;
};

/// Largest m*n accepted by the generators (degrees are 32-bit counters).
inline constexpr std::uint64_t kMaxChainLength = (std::uint64_t{1} << 31) - 1;

/// State of the single-edge chain H(a,1,t) after t completed steps.
///
/// Vertex s (0-based) is drawn at step t+1 with probability
/// (deg(s) + a - 1) / ((a+1)(t+1) - 1), and the new vertex t with probability
/// a / ((a+1)(t+1) - 1). That mass splits into a uniform urn (a per vertex
/// over all t+1 vertices) and an excess urn holding vertex s exactly
/// deg(s) - 1 times; one real picks the urn, one index picks inside it.
class AttachmentState {
 public:
  AttachmentState() = default;

  std::uint64_t steps() const noexcept { return degrees_.size(); }
  std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }
  std::span<const VertexId> excess() const noexcept { return excess_; }

  /// Draws the target for the next step. The new vertex has id steps().
  VertexId draw_target(double a, Rng& rng) const;

  /// Adds vertex steps() and its edge to `target` (a loop if target is the
  /// new vertex itself).
  void advance(VertexId target);

  void reserve(std::uint64_t steps);

 private:
  std::vector<std::uint32_t> degrees_;
  std::vector<VertexId> excess_;
};

/// Exact attachment probabilities for the next step, indexed by vertex id
/// 0..steps(); the last entry is the new vertex. Throws ParameterError on
/// a <= 0 and on an empty state (the first step is always the loop).
std::vector<double> attachment_distribution(const AttachmentState& state, double a);

/// H(a,1,n): n vertices, n edges, edge i joins vertex i to an earlier vertex
/// or itself. Edge 0 is the loop (0, 0).
Graph generate_bo_chain(double a, std::uint64_t n, std::uint64_t seed);

/// Maps every endpoint v to v / m. Throws ParameterError unless m divides n.
Graph merge_blocks(const Graph& graph, std::uint64_t m);
Graph merge_blocks(Graph&& graph, std::uint64_t m);

/// H(a,m,n) = merge_blocks(generate_bo_chain(a, m*n, seed), m).
Graph generate_bo(const BOParams& params);

}  // namespace pagraph
