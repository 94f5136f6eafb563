#include <benchmark/benchmark.h>

#include "pagraph/buckley_osthus.hpp"
#include "pagraph/graph.hpp"
#include "pagraph/stats.hpp"

namespace {

const pagraph::Graph& sample() {
  static const pagraph::Graph g = pagraph::generate_bo({0.276, 12, 100000, 3});
  return g;
}

void BM_Simplify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pagraph::simplify(sample()));
}
BENCHMARK(BM_Simplify)->Unit(benchmark::kMillisecond);

void BM_RhoSurface(benchmark::State& state) {
  const pagraph::SimpleGraph g = pagraph::simplify(sample());
  const auto hist = pagraph::degree_histogram(g);
  const auto matrix = pagraph::edge_degree_matrix(g);
  const auto grid = pagraph::log_grid(1.01, hist.max_degree());
  for (auto _ : state) benchmark::DoNotOptimize(pagraph::rho_surface(hist, matrix, grid));
}
BENCHMARK(BM_RhoSurface)->Unit(benchmark::kMillisecond);

}  // namespace
