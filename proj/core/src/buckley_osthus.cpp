#include "pagraph/buckley_osthus.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pagraph/errors.hpp"

namespace pagraph {

void BOParams::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("BO: a must be a positive finite real");
  if (m == 0) throw ParameterError("BO: m must be >= 1");
  if (n == 0) throw ParameterError("BO: n must be >= 1");
  if (n > kMaxChainLength / m) {
    throw ParameterError("BO: m*n = " + std::to_string(m) + "*" + std::to_string(n) +
                         " exceeds the supported chain length " + std::to_string(kMaxChainLength));
  }
}

VertexId AttachmentState::draw_target(double a, Rng& rng) const {
  const std::uint64_t t = steps() + 1;
  if (t == 1) return 0;
  const double uniform_mass = a * static_cast<double>(t);
  const double total_mass = uniform_mass + static_cast<double>(t - 1);
  if (rng.uniform01() * total_mass < uniform_mass) {
    return static_cast<VertexId>(rng.below(t));
  }
  return excess_[rng.below(t - 1)];
}

void AttachmentState::advance(VertexId target) {
  const auto self = static_cast<VertexId>(degrees_.size());
  if (target == self) {
    degrees_.push_back(2);
  } else {
    degrees_.push_back(1);
    ++degrees_[target];
  }
  excess_.push_back(target);
}

void AttachmentState::reserve(std::uint64_t steps) {
  degrees_.reserve(steps);
  excess_.reserve(steps);
}

std::vector<double> attachment_distribution(const AttachmentState& state, double a) {
  if (!(a > 0.0)) throw ParameterError("attachment_distribution: a must be > 0");
  const std::uint64_t t = state.steps() + 1;
  if (t < 2) throw ParameterError("attachment_distribution: the first step is the fixed loop");
  const double denominator = (a + 1.0) * static_cast<double>(t) - 1.0;
  std::vector<double> p;
  p.reserve(t);
  for (std::uint32_t d : state.degrees()) p.push_back((d + a - 1.0) / denominator);
  p.push_back(a / denominator);
  return p;
}

Graph generate_bo_chain(double a, std::uint64_t n, std::uint64_t seed) {
  BOParams{a, 1, n, seed}.validate();
  Rng rng(seed);
  AttachmentState state;
  state.reserve(n);
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::uint64_t t = 0; t < n; ++t) {
    const VertexId target = state.draw_target(a, rng);
    state.advance(target);
    edges.push_back({static_cast<VertexId>(t), target});
  }
  return Graph(n, std::move(edges));
}

Graph merge_blocks(Graph&& graph, std::uint64_t m) {
  if (m == 0) throw ParameterError("merge_blocks: m must be >= 1");
  const std::uint64_t n = graph.vertex_count();
  if (n % m != 0) {
    throw ParameterError("merge_blocks: vertex count " + std::to_string(n) +
                         " is not divisible by m = " + std::to_string(m));
  }
  std::vector<Edge> edges = std::move(graph).release_edges();
  if (m > 1) {
    const auto block = static_cast<VertexId>(m);
    for (Edge& e : edges) {
      e.u /= block;
      e.v /= block;
    }
  }
  return Graph(n / m, std::move(edges));
}

Graph merge_blocks(const Graph& graph, std::uint64_t m) {
  return merge_blocks(Graph(graph), m);
}

Graph generate_bo(const BOParams& params) {
  params.validate();
  return merge_blocks(generate_bo_chain(params.a, params.m * params.n, params.seed), params.m);
}

}  // namespace pagraph
