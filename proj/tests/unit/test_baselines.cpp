#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "pagraph/baselines.hpp"
#include "pagraph/errors.hpp"
#include "pagraph/graph.hpp"
#include "pagraph/rng.hpp"
#include "pagraph/stats.hpp"

namespace pagraph {
namespace {

TEST(Configuration, OddSumRejected) {
  const std::vector<std::uint32_t> degrees{1, 1, 1};
  EXPECT_THROW(generate_configuration(degrees, 0), ParameterError);
}

TEST(Configuration, ForcedOutcomes) {
  const std::vector<std::uint32_t> pair{1, 1};
  const Graph g = generate_configuration(pair, 5);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(std::min(g.edges()[0].u, g.edges()[0].v), 0u);
  EXPECT_EQ(std::max(g.edges()[0].u, g.edges()[0].v), 1u);
  const std::vector<std::uint32_t> single{2};
  EXPECT_EQ(generate_configuration(single, 5), Graph(1, {{0, 0}}));
}

TEST(Configuration, PreservesMultigraphDegrees) {
  const std::vector<std::uint32_t> degrees{3, 1, 4, 1, 5, 2, 6, 0, 2};
  const Graph g = generate_configuration(degrees, 11);
  EXPECT_EQ(g.vertex_count(), degrees.size());
  EXPECT_EQ(g.edge_count(), 12u);
  const auto got = multigraph_degrees(g);
  for (std::size_t v = 0; v < degrees.size(); ++v) EXPECT_EQ(got[v], degrees[v]);
}

TEST(Configuration, FourStubsGiveThreeEqualMatchings) {
  const std::vector<std::uint32_t> degrees{1, 1, 1, 1};
  std::map<VertexId, int> partner_of_zero;
  constexpr int kTrials = 30000;
  for (int i = 0; i < kTrials; ++i) {
    const Graph g = generate_configuration(degrees, derive_seed(3, i));
    for (const Edge& e : g.edges()) {
      if (e.u == 0) ++partner_of_zero[e.v];
      if (e.v == 0) ++partner_of_zero[e.u];
    }
  }
  ASSERT_EQ(partner_of_zero.size(), 3u);
  for (const auto& [v, count] : partner_of_zero) EXPECT_NEAR(count / double(kTrials), 1.0 / 3, 0.015);
}

TEST(PowerLawDegrees, BoundsParityAndCap) {
  GdsParams params{100000, 2.5, std::nullopt, 8};
  const DegreeSequence seq = sample_power_law_degrees(params);
  ASSERT_EQ(seq.degrees.size(), 100000u);
  const std::uint64_t natural_cap = static_cast<std::uint64_t>(std::pow(1e5, 1 / 1.5));
  EXPECT_LE(seq.degree_cap, natural_cap + 1);
  std::uint64_t sum = 0;
  for (auto d : seq.degrees) {
    EXPECT_GE(d, 1u);
    EXPECT_LE(d, seq.degree_cap + 1);
    sum += d;
  }
  EXPECT_EQ(sum % 2, 0u);
  EXPECT_NEAR(sum / 2.0, seq.expected_edges, 0.05 * seq.expected_edges);
}

TEST(PowerLawDegrees, SteepLawIsAlmostAllOnes) {
  const DegreeSequence seq = sample_power_law_degrees({100000, 50.0, std::nullopt, 2});
  const auto ones = std::count(seq.degrees.begin(), seq.degrees.end(), 1u);
  EXPECT_GE(ones / 1e5, 0.999);
}

TEST(PowerLawDegrees, TargetLowersCap) {
  const DegreeSequence natural = sample_power_law_degrees({100000, 2.2, std::nullopt, 1});
  const auto target = static_cast<std::uint64_t>(natural.expected_edges * 0.7);
  const DegreeSequence reduced = sample_power_law_degrees({100000, 2.2, target, 1});
  EXPECT_LT(reduced.degree_cap, natural.degree_cap);
  EXPECT_LE(reduced.expected_edges, 1.05 * target);
  EXPECT_THROW(sample_power_law_degrees({100000, 2.2, target * 10, 1}), ParameterError);
}

TEST(PowerLawDegrees, Validation) {
  EXPECT_THROW(sample_power_law_degrees({0, 2.5, std::nullopt, 0}), ParameterError);
  EXPECT_THROW(sample_power_law_degrees({10, 1.0, std::nullopt, 0}), ParameterError);
}

TEST(HolmeKim, EdgeCountAndSimplicity) {
  for (std::uint64_t m : {1u, 3u, 12u}) {
    const HkParams params{2000, m, 0.7, 5};
    const Graph g = generate_holme_kim(params);
    EXPECT_EQ(g.edge_count(), m * (m + 1) / 2 + m * (2000 - m - 1));
    const auto report = count_multiplicities(g);
    EXPECT_EQ(report.loops, 0u);
    EXPECT_EQ(report.multi_edges, 0u);
  }
}

TEST(HolmeKim, SeedGraphIsComplete) {
  const Graph g = generate_holme_kim({5, 4, 0.5, 0});
  const SimpleGraph s = simplify(g);
  for (VertexId v = 0; v < 5; ++v) EXPECT_EQ(s.degree(v), 4u);
}

TEST(HolmeKim, Validation) {
  EXPECT_THROW(generate_holme_kim({3, 3, 0.5, 0}), ParameterError);
  EXPECT_THROW(generate_holme_kim({10, 0, 0.5, 0}), ParameterError);
  EXPECT_THROW(generate_holme_kim({10, 2, 1.5, 0}), ParameterError);
}

// Reference Barabasi-Albert sampler with distinct targets, drawn through a
// Fenwick tree over degrees. HK with no triad steps should match its degree
// law.
std::vector<std::uint32_t> reference_ba_degrees(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
  std::vector<std::uint64_t> tree(n + 1, 0);
  std::vector<std::uint32_t> degree(n, 0);
  std::uint64_t total = 0;
  auto add = [&](std::uint64_t v, std::uint64_t delta) {
    degree[v] += static_cast<std::uint32_t>(delta);
    total += delta;
    for (std::uint64_t i = v + 1; i <= n; i += i & (~i + 1)) tree[i] += delta;
  };
  auto find = [&](std::uint64_t r) {
    std::uint64_t pos = 0;
    std::uint64_t mask = 1;
    while (mask * 2 <= n) mask *= 2;
    for (; mask; mask /= 2) {
      if (pos + mask <= n && tree[pos + mask] <= r) {
        pos += mask;
        r -= tree[pos];
      }
    }
    return pos;
  };
  for (std::uint64_t u = 0; u <= m; ++u) add(u, m);
  Rng rng(seed);
  for (std::uint64_t v = m + 1; v < n; ++v) {
    std::set<std::uint64_t> targets;
    while (targets.size() < m) targets.insert(find(rng.below(total)));
    for (auto t : targets) add(t, 1);
    add(v, m);
  }
  return degree;
}

double ks_distance(std::vector<std::uint32_t> x, std::vector<std::uint32_t> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const auto v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    worst = std::max(worst, std::abs(double(i) / x.size() - double(j) / y.size()));
  }
  return worst;
}

TEST(HolmeKim, NoTriadsMatchesPreferentialAttachment) {
  constexpr std::uint64_t n = 50000;
  const SimpleGraph hk = simplify(generate_holme_kim({n, 3, 0.0, 21}));
  const auto ba = reference_ba_degrees(n, 3, 22);
  // Two-sample KS critical value at 1%: 1.63 sqrt(2/n).
  EXPECT_LT(ks_distance(hk.degrees(), ba), 1.63 * std::sqrt(2.0 / n));
}

TEST(HolmeKim, DegreeTailExponentNearThree) {
  const SimpleGraph g = simplify(generate_holme_kim({1000000, 3, 0.5, 4}));
  const DegreeHistogram hist = degree_histogram(g);
  const CumulativeDegree tail(hist);
  // Cumulative tail #~(d) ~ d^-2 for a density ~ d^-3.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (double d = 10; d <= 300; d *= 1.2) {
    const double x = std::log(d), y = std::log(double(tail.at(static_cast<std::uint64_t>(d))));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++k;
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  EXPECT_GT(slope - 1, -3.3);
  EXPECT_LT(slope - 1, -2.7);
}

}  // namespace
}  // namespace pagraph
