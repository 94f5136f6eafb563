#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pagraph/graph.hpp"

namespace pagraph {

/// #(d): number of vertices of each degree, dense by degree. Isolated
/// vertices sit in the d = 0 bucket.
class DegreeHistogram {
 public:
  DegreeHistogram() = default;
  explicit DegreeHistogram(std::vector<std::uint64_t> counts);

  std::uint64_t count(std::uint64_t d) const noexcept {
    return d < counts_.size() ? counts_[d] : 0;
  }
  /// Largest degree with a nonzero count (0 for an empty or edgeless graph).
  std::uint64_t max_degree() const noexcept;
  std::uint64_t vertex_count() const noexcept { return vertex_count_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }

  friend bool operator==(const DegreeHistogram&, const DegreeHistogram&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t vertex_count_ = 0;
};

DegreeHistogram degree_histogram(const SimpleGraph& graph);
/// Most frequent degree d >= 1 (smallest on ties); 0 if every vertex is isolated.
std::uint64_t modal_degree(const DegreeHistogram& histogram) noexcept;
DegreeHistogram degree_histogram(std::span<const std::uint32_t> degrees);

/// One edge seen through the degrees of its endpoints, larger degree first.
struct DegreePair {
  std::uint32_t high = 0;
  std::uint32_t low = 0;

  friend bool operator==(const DegreePair&, const DegreePair&) = default;
  friend auto operator<=>(const DegreePair&, const DegreePair&) = default;
};

std::vector<DegreePair> edge_degree_pairs(const SimpleGraph& graph);

struct DegreeCell {
  std::uint32_t d1 = 0;
  std::uint32_t d2 = 0;
  std::uint64_t count = 0;

  friend bool operator==(const DegreeCell&, const DegreeCell&) = default;
};

/// X(d1, d2): edges between degree-d1 and degree-d2 vertices. Each edge adds 1
/// to X(deg u, deg v) and 1 to X(deg v, deg u), so an edge between two
/// vertices of equal degree d adds 2 to X(d, d). Stored sparsely as cells
/// sorted by (d1, d2), both orientations present.
class EdgeDegreeMatrix {
 public:
  EdgeDegreeMatrix() = default;
  /// Cells must be sorted by (d1, d2), unique, symmetric and nonzero.
  explicit EdgeDegreeMatrix(std::vector<DegreeCell> cells);

  std::uint64_t at(std::uint32_t d1, std::uint32_t d2) const noexcept;
  std::span<const DegreeCell> cells() const noexcept { return cells_; }
  /// Cells with d1 == row, sorted by d2.
  std::span<const DegreeCell> row(std::uint32_t d1) const noexcept;
  /// Number of edges counted (sum of all cells / 2).
  std::uint64_t edge_count() const noexcept;

  friend bool operator==(const EdgeDegreeMatrix&, const EdgeDegreeMatrix&) = default;

 private:
  std::vector<DegreeCell> cells_;
};

EdgeDegreeMatrix edge_degree_matrix(const SimpleGraph& graph);
EdgeDegreeMatrix edge_degree_matrix(std::span<const DegreePair> pairs);

/// The cells with d1 >= d2 (count = X(d1, d2)).
std::vector<DegreeCell> edge_cells_lower(const EdgeDegreeMatrix& matrix);

/// #~(d) = sum_{j > d} #(j) for every d >= 0.
class CumulativeDegree {
 public:
  CumulativeDegree() = default;
  explicit CumulativeDegree(const DegreeHistogram& histogram);

  std::uint64_t at(std::uint64_t d) const noexcept {
    return d < tail_.size() ? tail_[d] : 0;
  }

 private:
  std::vector<std::uint64_t> tail_;
};

CumulativeDegree cumulative_degree(const DegreeHistogram& histogram);

/// Delta = { floor(alpha^k) : k >= 1 }, deduplicated and capped at d_max.
/// alpha^k is formed by repeated multiplication in double precision.
struct LogGrid {
  double alpha = 1.01;
  std::vector<std::uint64_t> points;
};

/// Throws ParameterError unless alpha > 1.
LogGrid log_grid(double alpha, std::uint64_t d_max);

/// X~ evaluated at every pair of a sorted threshold list t_0 < ... < t_{T-1}:
/// X~(d1, d2) = sum of X(j1, j2) over j1 >= j2, j1 > max(d1, d2),
/// j2 > min(d1, d2). Dense and symmetric in the threshold indices.
class CumulativeEdgeTable {
 public:
  CumulativeEdgeTable() = default;
  CumulativeEdgeTable(std::vector<std::uint64_t> thresholds, std::vector<std::uint64_t> values);

  std::span<const std::uint64_t> thresholds() const noexcept { return thresholds_; }
  std::size_t size() const noexcept { return thresholds_.size(); }

  std::uint64_t at_index(std::size_t i, std::size_t j) const noexcept {
    return i >= j ? values_[i * size() + j] : values_[j * size() + i];
  }
  /// Looks up thresholds d1, d2; both must be in the table.
  std::uint64_t at(std::uint64_t d1, std::uint64_t d2) const;

 private:
  std::vector<std::uint64_t> thresholds_;
  std::vector<std::uint64_t> values_;  // row-major T x T, lower triangle used
};

/// Sorts cells into threshold buckets and accumulates 2-D suffix sums:
/// O(cells log T + T^2).
CumulativeEdgeTable cumulative_edges(const EdgeDegreeMatrix& matrix,
                                     std::span<const std::uint64_t> thresholds);

/// Same, from lower-triangle cells (d1 >= d2) whose X values are given
/// separately in `values`; lets the bootstrap reweight cells without
/// rebuilding a matrix.
CumulativeEdgeTable cumulative_edges_from_lower(std::span<const DegreeCell> lower_cells,
                                                std::span<const std::uint64_t> values,
                                                std::span<const std::uint64_t> thresholds);

/// #~, X~ and rho~ = X~(d1,d2) / (#~(d1) #~(d2)) on the grid.
class RhoSurface {
 public:
  RhoSurface() = default;
  RhoSurface(LogGrid grid, std::vector<std::uint64_t> cumulative_degree,
             CumulativeEdgeTable cumulative_edges);

  const LogGrid& grid() const noexcept { return grid_; }
  std::span<const std::uint64_t> cumulative_degree() const noexcept { return cum_deg_; }
  const CumulativeEdgeTable& cumulative_edges() const noexcept { return cum_edges_; }

  /// rho~ at grid indices (i, j); empty where #~(d_i) #~(d_j) = 0.
  std::optional<double> rho(std::size_t i, std::size_t j) const noexcept;

 private:
  LogGrid grid_;
  std::vector<std::uint64_t> cum_deg_;
  CumulativeEdgeTable cum_edges_;
};

RhoSurface rho_surface(const DegreeHistogram& histogram, const EdgeDegreeMatrix& matrix,
                       const LogGrid& grid);
RhoSurface rho_surface(const CumulativeDegree& cumulative, CumulativeEdgeTable table,
                       const LogGrid& grid);

/// d_nn(d) = sum_{d1} d1 X(d, d1) / sum_{d1} X(d, d1), for rows with a
/// nonzero denominator, ascending in d.
struct NeighborDegreeProfile {
  std::vector<std::pair<std::uint32_t, double>> points;
};

NeighborDegreeProfile d_nn_profile(const EdgeDegreeMatrix& matrix);

}  // namespace pagraph
