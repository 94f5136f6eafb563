#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numeric>
#include <set>
#include <vector>

#include "pagraph/parallel.hpp"
#include "pagraph/rng.hpp"

namespace pagraph {
namespace {

TEST(Rng, EngineMatchesStandardReferenceValue) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  Rng rng(5489u);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next();
  EXPECT_EQ(x, 9981545732273789042ull);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.uniform01(), b.uniform01());
    ASSERT_EQ(a.below(97), b.below(97));
  }
}

TEST(Rng, Uniform01StaysInUnitInterval) {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, BelowIsUniform) {
  constexpr std::uint64_t kBins = 10;
  constexpr int kDraws = 200000;
  Rng rng(7);
  std::vector<int> counts(kBins, 0);
  for (int i = 0; i < kDraws; ++i) {
    const auto k = rng.below(kBins);
    ASSERT_LT(k, kBins);
    ++counts[k];
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(kDraws) / kBins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 9 degrees of freedom, p = 0.001 critical value.
  EXPECT_LT(chi2, 27.88);
}

TEST(Rng, BelowDegenerateBounds) {
  Rng rng(3);
  EXPECT_EQ(rng.below(0), 0u);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(Rng, DeriveSeedSeparatesStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t master = 0; master < 20; ++master) {
    for (std::uint64_t stream = 0; stream < 50; ++stream) {
      seen.insert(derive_seed(master, stream));
    }
  }
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}

TEST(Rng, ShuffleIsAPermutation) {
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);
  Rng rng(11);
  shuffle(std::span<int>(v), rng);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_FALSE(std::is_sorted(v.begin(), v.end()));
}

TEST(Rng, ShuffleOfThreeIsUniform) {
  constexpr int kDraws = 60000;
  Rng rng(5);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < kDraws; ++i) {
    std::vector<int> v{0, 1, 2};
    shuffle(std::span<int>(v), rng);
    ++counts[v[0] * 2 + (v[1] > v[2] ? 1 : 0)];
  }
  for (int c : counts) EXPECT_NEAR(c, kDraws / 6.0, 4 * std::sqrt(kDraws / 6.0));
}

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

TEST(Parallel, RethrowsBodyException) {
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Parallel, DefaultThreadCountIsPositive) { EXPECT_GE(default_thread_count(), 1u); }

}  // namespace
}  // namespace pagraph
