#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "pagraph/errors.hpp"
#include "pagraph/graph.hpp"
#include "pagraph/rng.hpp"

namespace pagraph {
namespace {

std::vector<std::vector<VertexId>> adjacency(const SimpleGraph& g) {
  std::vector<std::vector<VertexId>> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto nb = g.neighbors(v);
    out.emplace_back(nb.begin(), nb.end());
  }
  return out;
}

TEST(Graph, RejectsEndpointOutOfRange) {
  EXPECT_THROW(Graph(2, {{0, 2}}), ValidationError);
  EXPECT_NO_THROW(Graph(3, {{0, 2}}));
}

TEST(Graph, RejectsTooManyVertices) {
  EXPECT_THROW(Graph(kMaxVertexCount + 1, {}), ParameterError);
}

TEST(Simplify, DropsLoopsAndMergesDuplicates) {
  const Graph g(3, {{0, 0}, {0, 1}, {1, 0}, {1, 2}});
  const SimpleGraph s = simplify(g);
  const std::vector<std::vector<VertexId>> expected{{1}, {0, 2}, {1}};
  EXPECT_EQ(adjacency(s), expected);
  EXPECT_EQ(s.edge_count(), 2u);
}

TEST(Simplify, EmptyGraphKeepsIsolatedVertices) {
  const SimpleGraph s = simplify(Graph(2, {}));
  EXPECT_EQ(s.vertex_count(), 2u);
  EXPECT_EQ(s.degree(0), 0u);
  EXPECT_EQ(s.degree(1), 0u);
}

TEST(Multiplicity, CountsLoopsAndExcessParallelEdges) {
  const Graph g(3, {{0, 0}, {0, 1}, {1, 0}, {1, 0}, {1, 2}, {2, 2}});
  const MultiplicityReport r = count_multiplicities(g);
  EXPECT_EQ(r.loops, 2u);
  EXPECT_EQ(r.multi_edges, 2u);
  EXPECT_EQ(r.total_edges, 6u);
}

TEST(Multiplicity, LoopAddsTwoToMultigraphDegree) {
  const auto d = multigraph_degrees(Graph(2, {{0, 0}, {0, 1}}));
  EXPECT_EQ(d, (std::vector<std::uint64_t>{3, 1}));
}

TEST(Simplify, RoundTripThroughToGraphIsIdempotent) {
  const Graph g(4, {{3, 1}, {1, 3}, {0, 2}, {2, 2}});
  const SimpleGraph s = simplify(g);
  EXPECT_EQ(simplify(to_graph(s)), s);
}

class RandomMultigraph : public ::testing::TestWithParam<int> {};

TEST_P(RandomMultigraph, SimplifyAgreesWithBruteForce) {
  Rng rng(derive_seed(1234, static_cast<std::uint64_t>(GetParam())));
  const std::uint64_t n = 1 + rng.below(40);
  const std::uint64_t m = rng.below(120);
  std::vector<Edge> edges;
  for (std::uint64_t i = 0; i < m; ++i) {
    edges.push_back({static_cast<VertexId>(rng.below(n)), static_cast<VertexId>(rng.below(n))});
  }
  const Graph g(n, edges);

  std::set<std::pair<VertexId, VertexId>> pairs;
  std::map<std::pair<VertexId, VertexId>, int> occurrences;
  std::uint64_t loops = 0;
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      ++loops;
      continue;
    }
    const auto key = std::minmax(e.u, e.v);
    pairs.insert(key);
    ++occurrences[key];
  }
  std::uint64_t excess = 0;
  for (const auto& [key, count] : occurrences) excess += static_cast<std::uint64_t>(count - 1);

  const SimpleGraph s = simplify(g);
  EXPECT_EQ(s.vertex_count(), n);
  EXPECT_EQ(s.edge_count(), pairs.size());
  for (VertexId v = 0; v < n; ++v) {
    const auto nb = s.neighbors(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
    for (VertexId u : nb) {
      EXPECT_NE(u, v);
      EXPECT_TRUE(pairs.count(std::minmax(u, v)));
      const auto back = s.neighbors(u);
      EXPECT_TRUE(std::binary_search(back.begin(), back.end(), v));
    }
  }
  const MultiplicityReport r = count_multiplicities(g);
  EXPECT_EQ(r.loops, loops);
  EXPECT_EQ(r.multi_edges, excess);
  EXPECT_LE(r.loops + r.multi_edges, r.total_edges);
  EXPECT_EQ(s.edge_count(), r.total_edges - r.loops - r.multi_edges);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomMultigraph, ::testing::Range(0, 50));

}  // namespace
}  // namespace pagraph
