#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "pagraph/fitting.hpp"

namespace {

void BM_FitDegree(benchmark::State& state) {
  std::vector<pagraph::DegreeSample> samples;
  for (double d = 100; d <= 100000; d *= 1.01) samples.push_back({d, 1e6 * std::pow(d, -1.3)});
  for (auto _ : state) benchmark::DoNotOptimize(pagraph::fit_degree(samples));
}
BENCHMARK(BM_FitDegree);

void BM_FitEdges(benchmark::State& state) {
  std::vector<pagraph::PairSample> samples;
  for (double d2 = 100; d2 <= 10000; d2 *= 1.01) {
    for (double d1 = d2 * 10.5; d1 <= 100000; d1 *= 1.01) {
      samples.push_back({d1, d2, pagraph::eval_g(0.3, 1e-6, d1, d2)});
    }
  }
  state.counters["pairs"] = static_cast<double>(samples.size());
  for (auto _ : state) benchmark::DoNotOptimize(pagraph::fit_edges(samples));
}
BENCHMARK(BM_FitEdges)->Unit(benchmark::kMillisecond);

}  // namespace
