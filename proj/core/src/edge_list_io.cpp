#include "pagraph/edge_list_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pagraph/errors.hpp"

namespace pagraph {

namespace {

constexpr std::array<char, 4> kMagic = {'P', 'A', 'G', 'L'};
constexpr char kBinaryVersion = 1;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim_left(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  return s.substr(i);
}

// Parses one unsigned decimal token at the front of `s`, advancing past it.
bool take_uint(std::string_view& s, std::uint64_t& value) {
  s = trim_left(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || (ptr != s.data() + s.size() && !is_space(*ptr))) return false;
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return true;
}

void put_u64(std::ostream& out, std::uint64_t value) {
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw IoError("truncated binary edge list");
  }
  std::uint64_t value = 0;
  for (int i = 7; i >= 0; --i) value = (value << 8) | bytes[i];
  return value;
}

VertexId checked_id(std::uint64_t id) {
  if (id >= kMaxVertexCount) {
    throw ValidationError("vertex id " + std::to_string(id) + " exceeds the 32-bit id range");
  }
  return static_cast<VertexId>(id);
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::optional<std::uint64_t> declared;
  std::uint64_t max_id = 0;
  bool any = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    line = trim_left(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.size() >= 2 && line[1] == 'n' && (line.size() == 2 || is_space(line[2]))) {
        std::string_view rest = line.substr(2);
        std::uint64_t n = 0;
        if (!take_uint(rest, n) || !trim_left(rest).empty()) {
          throw ParseError(line_no, "malformed '#n' header");
        }
        declared = n;
      }
      continue;
    }

    std::uint64_t u = 0;
    std::uint64_t v = 0;
    std::string_view rest = line;
    if (!take_uint(rest, u) || !take_uint(rest, v) || !trim_left(rest).empty()) {
      throw ParseError(line_no, "expected two non-negative integer vertex ids");
    }
    if (declared && (u >= *declared || v >= *declared)) {
      throw ValidationError("line " + std::to_string(line_no) + ": vertex id >= declared n " +
                            std::to_string(*declared));
    }
    max_id = std::max({max_id, u, v});
    any = true;
    edges.push_back({checked_id(u), checked_id(v)});
  }

  const std::uint64_t n = declared ? *declared : (any ? max_id + 1 : 0);
  if (declared && any && max_id >= n) {
    throw ValidationError("vertex id >= declared n " + std::to_string(n));
  }
  return Graph(n, std::move(edges));
}

Graph read_edge_list(std::istream& in) {
  std::string text(std::istreambuf_iterator<char>(in), {});
  if (in.bad()) throw IoError("failed to read edge list");
  return parse_edge_list(text);
}

void write_edge_list(const Graph& graph, std::ostream& out) {
  std::string buffer;
  buffer.reserve(64 + graph.edge_count() * 16);
  buffer += "#n ";
  buffer += std::to_string(graph.vertex_count());
  buffer += '\n';
  std::array<char, 24> digits;
  for (const Edge& e : graph.edges()) {
    auto end = std::to_chars(digits.data(), digits.data() + digits.size(), e.u).ptr;
    buffer.append(digits.data(), end);
    buffer += ' ';
    end = std::to_chars(digits.data(), digits.data() + digits.size(), e.v).ptr;
    buffer.append(digits.data(), end);
    buffer += '\n';
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw IoError("failed to write edge list");
}

Graph read_binary_edge_list(std::istream& in) {
  std::array<char, 5> header;
  if (!in.read(header.data(), header.size())) throw IoError("truncated binary edge list");
  if (!std::equal(kMagic.begin(), kMagic.end(), header.begin())) {
    throw ValidationError("not a binary edge list (bad magic)");
  }
  if (header[4] != kBinaryVersion) {
    throw ValidationError("unsupported binary edge list version " +
                          std::to_string(static_cast<int>(header[4])));
  }
  const std::uint64_t n = get_u64(in);
  const std::uint64_t m = get_u64(in);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::uint64_t u = get_u64(in);
    const std::uint64_t v = get_u64(in);
    edges.push_back({checked_id(u), checked_id(v)});
  }
  return Graph(n, std::move(edges));
}

void write_binary_edge_list(const Graph& graph, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  out.put(kBinaryVersion);
  put_u64(out, graph.vertex_count());
  put_u64(out, graph.edge_count());
  for (const Edge& e : graph.edges()) {
    put_u64(out, e.u);
    put_u64(out, e.v);
  }
  if (!out) throw IoError("failed to write binary edge list");
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == 4 && head == kMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_binary_edge_list(in) : read_edge_list(in);
}

void save_graph(const Graph& graph, const std::filesystem::path& path, GraphFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (format == GraphFormat::kBinary) {
    write_binary_edge_list(graph, out);
  } else {
    write_edge_list(graph, out);
  }
}

GraphFormat preferred_format(const Graph& graph) noexcept {
  return graph.edge_count() > kBinaryEdgeThreshold ? GraphFormat::kBinary : GraphFormat::kText;
}

}  // namespace pagraph
