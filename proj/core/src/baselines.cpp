#include "pagraph/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pagraph/buckley_osthus.hpp"
#include "pagraph/errors.hpp"
#include "pagraph/rng.hpp"

namespace pagraph {

namespace {

// Unnormalized CDF of d^-gamma over [1, cap] and the matching mean degree.
struct TruncatedLaw {
  std::vector<double> cdf;
  double mean = 0.0;
};

TruncatedLaw truncated_law(double gamma, std::uint64_t cap) {
  TruncatedLaw law;
  law.cdf.resize(cap);
  double mass = 0.0;
  double first_moment = 0.0;
  for (std::uint64_t d = 1; d <= cap; ++d) {
    const double w = std::pow(static_cast<double>(d), -gamma);
    mass += w;
    first_moment += w * static_cast<double>(d);
    law.cdf[d - 1] = mass;
  }
  law.mean = first_moment / mass;
  return law;
}

double truncated_mean(double gamma, std::uint64_t cap) {
  double mass = 0.0;
  double first_moment = 0.0;
  for (std::uint64_t d = 1; d <= cap; ++d) {
    const double w = std::pow(static_cast<double>(d), -gamma);
    mass += w;
    first_moment += w * static_cast<double>(d);
  }
  return first_moment / mass;
}

}  // namespace

void GdsParams::validate() const {
  if (n == 0) throw ParameterError("GDS: n must be >= 1");
  if (n >= kMaxVertexCount) throw ParameterError("GDS: n exceeds the 32-bit vertex id range");
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw ParameterError("GDS: gamma must be > 1");
  if (target_edges && *target_edges == 0) throw ParameterError("GDS: target_edges must be > 0");
}

DegreeSequence sample_power_law_degrees(const GdsParams& params) {
  params.validate();
  const double n = static_cast<double>(params.n);
  auto cap = static_cast<std::uint64_t>(std::floor(std::pow(n, 1.0 / (params.gamma - 1.0))));
  cap = std::clamp<std::uint64_t>(cap, 1, std::max<std::uint64_t>(1, params.n - 1));
  cap = std::min<std::uint64_t>(cap, std::numeric_limits<std::uint32_t>::max());

  if (params.target_edges) {
    const double target = static_cast<double>(*params.target_edges);
    auto edges_for = [&](std::uint64_t c) { return n * truncated_mean(params.gamma, c) / 2.0; };
    const double at_natural = edges_for(cap);
    if (at_natural < 0.95 * target) {
      throw ParameterError("GDS: target of " + std::to_string(*params.target_edges) +
                           " edges is infeasible; gamma and n give at most about " +
                           std::to_string(static_cast<std::uint64_t>(at_natural)));
    }
    if (at_natural > 1.05 * target) {
      if (edges_for(1) > 1.05 * target) {
        throw ParameterError("GDS: target_edges is below n/2, the minimum for degrees >= 1");
      }
      // Expected edges grow with the cap; find the largest cap not overshooting.
      std::uint64_t lo = 1;
      std::uint64_t hi = cap;
      while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (edges_for(mid) <= 1.05 * target) {
          lo = mid;
        } else {
          hi = mid - 1;
        }
      }
      cap = lo;
      if (edges_for(cap) < 0.95 * target) {
        throw ParameterError("GDS: no degree cap puts the expected edge count within 5% of target");
      }
    }
  }

  const TruncatedLaw law = truncated_law(params.gamma, cap);
  DegreeSequence result;
  result.degree_cap = cap;
  result.expected_edges = n * law.mean / 2.0;
  result.degrees.resize(params.n);

  Rng rng(params.seed);
  const double total = law.cdf.back();
  std::uint64_t sum = 0;
  for (auto& d : result.degrees) {
    const double u = rng.uniform01() * total;
    const auto it = std::upper_bound(law.cdf.begin(), law.cdf.end(), u);
    d = static_cast<std::uint32_t>(std::min<std::ptrdiff_t>(it - law.cdf.begin(),
                                                            static_cast<std::ptrdiff_t>(cap) - 1) + 1);
    sum += d;
  }
  if (sum % 2 != 0) ++result.degrees[rng.below(params.n)];
  return result;
}

Graph generate_configuration(std::span<const std::uint32_t> degrees, std::uint64_t seed) {
  const std::uint64_t sum = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
  if (sum % 2 != 0) throw ParameterError("configuration model: degree sum is odd");
  if (degrees.size() >= kMaxVertexCount) {
    throw ParameterError("configuration model: too many vertices for 32-bit ids");
  }

  std::vector<VertexId> stubs;
  stubs.reserve(sum);
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    stubs.insert(stubs.end(), degrees[v], static_cast<VertexId>(v));
  }
  Rng rng(seed);
  shuffle(std::span<VertexId>(stubs), rng);

  std::vector<Edge> edges;
  edges.reserve(sum / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});
  return Graph(degrees.size(), std::move(edges));
}

void HkParams::validate() const {
  if (m == 0) throw ParameterError("HK: m must be >= 1");
  if (n < m + 1) throw ParameterError("HK: n must be >= m + 1 (the seed clique)");
  if (n >= kMaxVertexCount) throw ParameterError("HK: n exceeds the 32-bit vertex id range");
  if (!(triad_probability >= 0.0 && triad_probability <= 1.0)) {
    throw ParameterError("HK: triad probability must lie in [0, 1]");
  }
}

Graph generate_holme_kim(const HkParams& params) {
  params.validate();
  const std::uint64_t n = params.n;
  const std::uint64_t m = params.m;
  const std::uint64_t seed_size = m + 1;
  const std::uint64_t edge_total = m * (m + 1) / 2 + m * (n - seed_size);

  std::vector<Edge> edges;
  edges.reserve(edge_total);
  std::vector<std::vector<VertexId>> adjacency(n);
  // Every edge endpoint appears once, so a uniform entry is a degree-biased vertex.
  std::vector<VertexId> endpoints;
  endpoints.reserve(2 * edge_total);

  auto link = [&](VertexId u, VertexId v) {
    edges.push_back({u, v});
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
    endpoints.push_back(u);
    endpoints.push_back(v);
  };

  for (VertexId u = 0; u < seed_size; ++u) {
    for (VertexId v = u + 1; v < seed_size; ++v) link(v, u);
  }

  Rng rng(params.seed);
  std::vector<VertexId> targets;
  std::vector<VertexId> candidates;
  targets.reserve(m);
  auto chosen = [&](VertexId w) { return std::find(targets.begin(), targets.end(), w) != targets.end(); };
  auto preferential = [&] {
    VertexId w;
    do {
      w = endpoints[rng.below(endpoints.size())];
    } while (chosen(w));
    return w;
  };

  for (std::uint64_t vi = seed_size; vi < n; ++vi) {
    const auto v = static_cast<VertexId>(vi);
    targets.clear();
    VertexId anchor = preferential();
    targets.push_back(anchor);
    while (targets.size() < m) {
      VertexId next;
      bool triad_done = false;
      if (rng.bernoulli(params.triad_probability)) {
        candidates.clear();
        for (VertexId w : adjacency[anchor]) {
          if (!chosen(w)) candidates.push_back(w);
        }
        if (!candidates.empty()) {
          next = candidates[rng.below(candidates.size())];
          triad_done = true;
        }
      }
      if (!triad_done) {
        next = preferential();
        anchor = next;
      }
      targets.push_back(next);
    }
    // Edges are added after all targets are drawn, so the new vertex does not
    // attract its own later edges.
    for (VertexId w : targets) link(v, w);
  }
  return Graph(n, std::move(edges));
}

}  // namespace pagraph
