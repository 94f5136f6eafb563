#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pagraph {

using VertexId = std::uint32_t;

/// Largest vertex count representable with 32-bit ids.
inline constexpr std::uint64_t kMaxVertexCount = std::uint64_t{1} << 32;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph stored as an edge list. Loops and repeated pairs are
/// allowed; every endpoint is below vertex_count(). Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Throws ValidationError if an endpoint is >= vertex_count, and
  /// ParameterError if vertex_count exceeds kMaxVertexCount.
  Graph(std::uint64_t vertex_count, std::vector<Edge> edges);

  std::uint64_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Moves the edge list out, leaving the graph empty.
  std::vector<Edge> release_edges() && noexcept;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::uint64_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

/// Undirected simple graph in compressed sparse row form. Neighbor lists are
/// sorted ascending, contain no loops and no duplicates, and are symmetric.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  SimpleGraph(std::vector<std::uint64_t> offsets, std::vector<VertexId> neighbors);

  std::uint64_t vertex_count() const noexcept {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }
  std::uint64_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::uint32_t degree(VertexId v) const noexcept {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  std::vector<std::uint32_t> degrees() const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> neighbors_;
};

struct MultiplicityReport {
  std::uint64_t loops = 0;
  /// Sum over unordered non-loop pairs of (occurrences - 1).
  std::uint64_t multi_edges = 0;
  std::uint64_t total_edges = 0;

  friend bool operator==(const MultiplicityReport&, const MultiplicityReport&) = default;
};

/// Drops loops, merges parallel edges and ignores direction.
SimpleGraph simplify(const Graph& graph);

/// Builds a simple graph from an adjacency that is already simple. Used for
/// idempotence checks and tests; equivalent to simplify on the edge set.
Graph to_graph(const SimpleGraph& graph);

MultiplicityReport count_multiplicities(const Graph& graph);

/// Degrees in the multigraph; a loop adds 2 to its vertex.
std::vector<std::uint64_t> multigraph_degrees(const Graph& graph);

}  // namespace pagraph
