#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "pagraph/graph.hpp"

namespace pagraph {

/// Text format: one edge per line as two whitespace-separated decimal ids.
/// Lines starting with '#' are comments, except "#n <count>" which declares
/// the vertex count. Blank lines are skipped. Without a header the vertex
/// count is 1 + the largest id seen (0 for an empty file).
///
/// Binary format: "PAGL", version byte 1, then little-endian u64 vertex count,
/// u64 edge count, and u64 (u, v) pairs.
enum class GraphFormat { kText, kBinary };

/// Graphs with more edges than this are written in binary under kAuto.
inline constexpr std::uint64_t kBinaryEdgeThreshold = 10'000'000;

Graph parse_edge_list(std::string_view text);
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& graph, std::ostream& out);

Graph read_binary_edge_list(std::istream& in);
void write_binary_edge_list(const Graph& graph, std::ostream& out);

/// Detects the format from the leading magic bytes.
Graph load_graph(const std::filesystem::path& path);
void save_graph(const Graph& graph, const std::filesystem::path& path, GraphFormat format);

/// Format chosen for `graph` when the caller did not ask for one.
GraphFormat preferred_format(const Graph& graph) noexcept;

}  // namespace pagraph
