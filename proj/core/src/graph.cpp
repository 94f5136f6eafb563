#include "pagraph/graph.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "pagraph/errors.hpp"

namespace pagraph {

namespace {

std::uint64_t pack(VertexId a, VertexId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Sorted keys (min << 32 | max) for every non-loop edge.
std::vector<std::uint64_t> normalized_pairs(const Graph& graph) {
  std::vector<std::uint64_t> keys;
  keys.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) {
    if (e.u == e.v) continue;
    keys.push_back(e.u < e.v ? pack(e.u, e.v) : pack(e.v, e.u));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

Graph::Graph(std::uint64_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ > kMaxVertexCount) {
    throw ParameterError("vertex count " + std::to_string(vertex_count_) +
                         " exceeds the 32-bit vertex id range");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw ValidationError("edge " + std::to_string(i) + " (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ") has an endpoint >= vertex count " +
                            std::to_string(vertex_count_));
    }
  }
}

std::vector<Edge> Graph::release_edges() && noexcept {
  vertex_count_ = 0;
  return std::move(edges_);
}

SimpleGraph::SimpleGraph(std::vector<std::uint64_t> offsets, std::vector<VertexId> neighbors)
    : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)) {}

std::vector<std::uint32_t> SimpleGraph::degrees() const {
  std::vector<std::uint32_t> result(vertex_count());
  for (std::uint64_t v = 0; v < result.size(); ++v) {
    result[v] = degree(static_cast<VertexId>(v));
  }
  return result;
}

SimpleGraph simplify(const Graph& graph) {
  std::vector<std::uint64_t> keys = normalized_pairs(graph);
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  const std::uint64_t n = graph.vertex_count();
  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (std::uint64_t key : keys) {
    ++offsets[(key >> 32) + 1];
    ++offsets[(key & 0xFFFFFFFFu) + 1];
  }
  for (std::uint64_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];

  // Keys are sorted by (min, max). Every neighbor w < v of v is appended while
  // scanning keys with first component w, which all precede the keys whose
  // first component is v, so each list comes out sorted without a second pass.
  std::vector<VertexId> neighbors(offsets.back());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::uint64_t key : keys) {
    const auto lo = static_cast<VertexId>(key >> 32);
    const auto hi = static_cast<VertexId>(key & 0xFFFFFFFFu);
    neighbors[cursor[lo]++] = hi;
    neighbors[cursor[hi]++] = lo;
  }
  return SimpleGraph(std::move(offsets), std::move(neighbors));
}

Graph to_graph(const SimpleGraph& graph) {
  std::vector<Edge> edges;
  edges.reserve(graph.edge_count());
  for (std::uint64_t v = 0; v < graph.vertex_count(); ++v) {
    for (VertexId w : graph.neighbors(static_cast<VertexId>(v))) {
      if (v < w) edges.push_back({static_cast<VertexId>(v), w});
    }
  }
  return Graph(graph.vertex_count(), std::move(edges));
}

MultiplicityReport count_multiplicities(const Graph& graph) {
  MultiplicityReport report;
  report.total_edges = graph.edge_count();
  const std::vector<std::uint64_t> keys = normalized_pairs(graph);
  report.loops = graph.edge_count() - keys.size();
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i] == keys[i - 1]) ++report.multi_edges;
  }
  return report;
}

std::vector<std::uint64_t> multigraph_degrees(const Graph& graph) {
  std::vector<std::uint64_t> degrees(graph.vertex_count(), 0);
  for (const Edge& e : graph.edges()) {
    ++degrees[e.u];
    ++degrees[e.v];
  }
  return degrees;
}

}  // namespace pagraph
