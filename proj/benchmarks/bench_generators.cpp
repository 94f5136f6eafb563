#include <benchmark/benchmark.h>

#include "pagraph/baselines.hpp"
#include "pagraph/buckley_osthus.hpp"

namespace {

void BM_BuckleyOsthus(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(pagraph::generate_bo({0.276, 12, n, seed++}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(12 * n));
}
BENCHMARK(BM_BuckleyOsthus)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Configuration(benchmark::State& state) {
  const auto seq = pagraph::sample_power_law_degrees({static_cast<std::uint64_t>(state.range(0)), 2.276, {}, 1});
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(pagraph::generate_configuration(seq.degrees, seed++));
}
BENCHMARK(BM_Configuration)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_HolmeKim(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(pagraph::generate_holme_kim({n, 12, 0.5, seed++}));
}
BENCHMARK(BM_HolmeKim)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
