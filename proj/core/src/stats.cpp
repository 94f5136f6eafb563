#include "pagraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pagraph/errors.hpp"

namespace pagraph {

namespace {

std::uint64_t pack(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Expands sorted (high << 32 | low) keys into a symmetric cell list.
EdgeDegreeMatrix matrix_from_sorted_keys(const std::vector<std::uint64_t>& keys) {
  std::vector<DegreeCell> cells;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const auto high = static_cast<std::uint32_t>(keys[i] >> 32);
    const auto low = static_cast<std::uint32_t>(keys[i] & 0xFFFFFFFFu);
    const std::uint64_t edges = j - i;
    if (high == low) {
      cells.push_back({high, low, 2 * edges});
    } else {
      cells.push_back({high, low, edges});
      cells.push_back({low, high, edges});
    }
    i = j;
  }
  std::sort(cells.begin(), cells.end(), [](const DegreeCell& x, const DegreeCell& y) {
    return x.d1 != y.d1 ? x.d1 < y.d1 : x.d2 < y.d2;
  });
  return EdgeDegreeMatrix(std::move(cells));
}

}  // namespace

DegreeHistogram::DegreeHistogram(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
  while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
  for (std::uint64_t c : counts_) vertex_count_ += c;
}

std::uint64_t DegreeHistogram::max_degree() const noexcept {
  return counts_.empty() ? 0 : counts_.size() - 1;
}

DegreeHistogram degree_histogram(std::span<const std::uint32_t> degrees) {
  std::vector<std::uint64_t> counts;
  for (std::uint32_t d : degrees) {
    if (d >= counts.size()) counts.resize(static_cast<std::size_t>(d) + 1, 0);
    ++counts[d];
  }
  return DegreeHistogram(std::move(counts));
}

DegreeHistogram degree_histogram(const SimpleGraph& graph) {
  return degree_histogram(graph.degrees());
}

std::uint64_t modal_degree(const DegreeHistogram& histogram) noexcept {
  const auto counts = histogram.counts();
  std::uint64_t best = 0;
  for (std::size_t d = 1; d < counts.size(); ++d) {
    if (counts[d] > 0 && (best == 0 || counts[d] > counts[best])) best = d;
  }
  return best;
}

std::vector<DegreePair> edge_degree_pairs(const SimpleGraph& graph) {
  std::vector<DegreePair> pairs;
  pairs.reserve(graph.edge_count());
  for (std::uint64_t v = 0; v < graph.vertex_count(); ++v) {
    const auto u = static_cast<VertexId>(v);
    const std::uint32_t du = graph.degree(u);
    for (VertexId w : graph.neighbors(u)) {
      if (w <= u) continue;
      const std::uint32_t dw = graph.degree(w);
      pairs.push_back(du >= dw ? DegreePair{du, dw} : DegreePair{dw, du});
    }
  }
  return pairs;
}

EdgeDegreeMatrix::EdgeDegreeMatrix(std::vector<DegreeCell> cells) : cells_(std::move(cells)) {}

std::uint64_t EdgeDegreeMatrix::at(std::uint32_t d1, std::uint32_t d2) const noexcept {
  const auto it = std::lower_bound(cells_.begin(), cells_.end(), std::pair{d1, d2},
                                   [](const DegreeCell& c, const std::pair<std::uint32_t, std::uint32_t>& key) {
                                     return c.d1 != key.first ? c.d1 < key.first : c.d2 < key.second;
                                   });
  return it != cells_.end() && it->d1 == d1 && it->d2 == d2 ? it->count : 0;
}

std::span<const DegreeCell> EdgeDegreeMatrix::row(std::uint32_t d1) const noexcept {
  const auto first = std::lower_bound(cells_.begin(), cells_.end(), d1,
                                      [](const DegreeCell& c, std::uint32_t d) { return c.d1 < d; });
  const auto last = std::upper_bound(first, cells_.end(), d1,
                                     [](std::uint32_t d, const DegreeCell& c) { return d < c.d1; });
  return {first, last};
}

std::uint64_t EdgeDegreeMatrix::edge_count() const noexcept {
  std::uint64_t total = 0;
  for (const DegreeCell& c : cells_) total += c.count;
  return total / 2;
}

EdgeDegreeMatrix edge_degree_matrix(std::span<const DegreePair> pairs) {
  std::vector<std::uint64_t> keys;
  keys.reserve(pairs.size());
  for (const DegreePair& p : pairs) {
    keys.push_back(p.high >= p.low ? pack(p.high, p.low) : pack(p.low, p.high));
  }
  std::sort(keys.begin(), keys.end());
  return matrix_from_sorted_keys(keys);
}

EdgeDegreeMatrix edge_degree_matrix(const SimpleGraph& graph) {
  return edge_degree_matrix(edge_degree_pairs(graph));
}

std::vector<DegreeCell> edge_cells_lower(const EdgeDegreeMatrix& matrix) {
  std::vector<DegreeCell> lower;
  for (const DegreeCell& c : matrix.cells()) {
    if (c.d1 >= c.d2) lower.push_back(c);
  }
  return lower;
}

CumulativeDegree::CumulativeDegree(const DegreeHistogram& histogram) {
  const auto counts = histogram.counts();
  tail_.assign(counts.size(), 0);
  std::uint64_t running = 0;
  for (std::size_t d = counts.size(); d-- > 0;) {
    tail_[d] = running;
    running += counts[d];
  }
}

CumulativeDegree cumulative_degree(const DegreeHistogram& histogram) {
  return CumulativeDegree(histogram);
}

LogGrid log_grid(double alpha, std::uint64_t d_max) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw ParameterError("log grid: alpha must be a finite real > 1");
  }
  LogGrid grid;
  grid.alpha = alpha;
  double x = 1.0;
  for (;;) {
    x *= alpha;
    const double v = std::floor(x);
    if (v > static_cast<double>(d_max)) break;
    const auto point = static_cast<std::uint64_t>(v);
    if (grid.points.empty() || grid.points.back() != point) grid.points.push_back(point);
  }
  return grid;
}

CumulativeEdgeTable::CumulativeEdgeTable(std::vector<std::uint64_t> thresholds,
                                         std::vector<std::uint64_t> values)
    : thresholds_(std::move(thresholds)), values_(std::move(values)) {}

std::uint64_t CumulativeEdgeTable::at(std::uint64_t d1, std::uint64_t d2) const {
  auto index = [&](std::uint64_t d) {
    const auto it = std::lower_bound(thresholds_.begin(), thresholds_.end(), d);
    if (it == thresholds_.end() || *it != d) {
      throw ParameterError("threshold " + std::to_string(d) + " is not in the table");
    }
    return static_cast<std::size_t>(it - thresholds_.begin());
  };
  return at_index(index(d1), index(d2));
}

CumulativeEdgeTable cumulative_edges_from_lower(std::span<const DegreeCell> lower_cells,
                                                std::span<const std::uint64_t> values,
                                                std::span<const std::uint64_t> thresholds) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end()) ||
      std::adjacent_find(thresholds.begin(), thresholds.end()) != thresholds.end()) {
    throw ParameterError("cumulative edges: thresholds must be strictly increasing");
  }
  const std::size_t t = thresholds.size();
  std::vector<std::uint64_t> table(t * t, 0);
  if (t == 0) return CumulativeEdgeTable({}, {});

  // A cell (j1 >= j2) contributes to threshold indices p < c1, q < c2, where
  // c is the number of thresholds strictly below j. Bucket at (c1-1, c2-1)
  // and take 2-D suffix sums.
  for (std::size_t k = 0; k < lower_cells.size(); ++k) {
    const DegreeCell& cell = lower_cells[k];
    const auto c1 = static_cast<std::size_t>(
        std::lower_bound(thresholds.begin(), thresholds.end(), std::uint64_t{cell.d1}) - thresholds.begin());
    const auto c2 = static_cast<std::size_t>(
        std::lower_bound(thresholds.begin(), thresholds.end(), std::uint64_t{cell.d2}) - thresholds.begin());
    if (c1 == 0 || c2 == 0) continue;
    table[(c1 - 1) * t + (c2 - 1)] += values[k];
  }
  for (std::size_t p = t; p-- > 0;) {
    for (std::size_t q = t; q-- > 0;) {
      std::uint64_t s = table[p * t + q];
      if (p + 1 < t) s += table[(p + 1) * t + q];
      if (q + 1 < t) s += table[p * t + q + 1];
      if (p + 1 < t && q + 1 < t) s -= table[(p + 1) * t + q + 1];
      table[p * t + q] = s;
    }
  }
  return CumulativeEdgeTable(std::vector<std::uint64_t>(thresholds.begin(), thresholds.end()),
                             std::move(table));
}

CumulativeEdgeTable cumulative_edges(const EdgeDegreeMatrix& matrix,
                                     std::span<const std::uint64_t> thresholds) {
  const std::vector<DegreeCell> lower = edge_cells_lower(matrix);
  std::vector<std::uint64_t> values;
  values.reserve(lower.size());
  for (const DegreeCell& c : lower) values.push_back(c.count);
  return cumulative_edges_from_lower(lower, values, thresholds);
}

RhoSurface::RhoSurface(LogGrid grid, std::vector<std::uint64_t> cumulative_degree,
                       CumulativeEdgeTable cumulative_edges)
    : grid_(std::move(grid)), cum_deg_(std::move(cumulative_degree)), cum_edges_(std::move(cumulative_edges)) {}

std::optional<double> RhoSurface::rho(std::size_t i, std::size_t j) const noexcept {
  const double denominator = static_cast<double>(cum_deg_[i]) * static_cast<double>(cum_deg_[j]);
  if (denominator == 0.0) return std::nullopt;
  return static_cast<double>(cum_edges_.at_index(i, j)) / denominator;
}

RhoSurface rho_surface(const CumulativeDegree& cumulative, CumulativeEdgeTable table,
                       const LogGrid& grid) {
  std::vector<std::uint64_t> on_grid;
  on_grid.reserve(grid.points.size());
  for (std::uint64_t d : grid.points) on_grid.push_back(cumulative.at(d));
  return RhoSurface(grid, std::move(on_grid), std::move(table));
}

RhoSurface rho_surface(const DegreeHistogram& histogram, const EdgeDegreeMatrix& matrix,
                       const LogGrid& grid) {
  return rho_surface(CumulativeDegree(histogram), cumulative_edges(matrix, grid.points), grid);
}

NeighborDegreeProfile d_nn_profile(const EdgeDegreeMatrix& matrix) {
  NeighborDegreeProfile profile;
  const auto cells = matrix.cells();
  for (std::size_t i = 0; i < cells.size();) {
    const std::uint32_t d = cells[i].d1;
    double weighted = 0.0;
    std::uint64_t total = 0;
    for (; i < cells.size() && cells[i].d1 == d; ++i) {
      weighted += static_cast<double>(cells[i].d2) * static_cast<double>(cells[i].count);
      total += cells[i].count;
    }
    if (total > 0) profile.points.emplace_back(d, weighted / static_cast<double>(total));
  }
  return profile;
}

}  // namespace pagraph
