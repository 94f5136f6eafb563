#include "pagraph/analysis_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "pagraph/errors.hpp"

namespace pagraph {

namespace {

template <typename T>
void append_number(std::string& line, T value) {
  std::array<char, 32> buf;
  const auto end = std::to_chars(buf.data(), buf.data() + buf.size(), value).ptr;
  line.append(buf.data(), end);
}

// Splits a TAB-separated row into exactly `columns` unsigned integers.
template <std::size_t N>
std::array<std::uint64_t, N> parse_row(std::string_view line, std::size_t line_no) {
  std::array<std::uint64_t, N> values{};
  std::size_t col = 0;
  while (col < N) {
    const std::size_t tab = line.find('\t');
    const std::string_view field = line.substr(0, tab);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), values[col]);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw ParseError(line_no, "expected an unsigned integer in column " + std::to_string(col + 1));
    }
    ++col;
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  if (col != N) throw ParseError(line_no, "expected " + std::to_string(N) + " columns");
  return values;
}

template <typename RowFn>
void for_each_row(std::istream& in, RowFn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    fn(std::string_view(line), line_no);
  }
  if (in.bad()) throw IoError("failed to read TSV input");
}

void flush(std::ostream& out, const std::string& text) {
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed to write TSV output");
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf;
  const auto end = std::to_chars(buf.data(), buf.data() + buf.size(), value).ptr;
  return std::string(buf.data(), end);
}

void write_degrees_tsv(const DegreeHistogram& histogram, std::ostream& out) {
  const CumulativeDegree cumulative(histogram);
  std::string text = "# d\tcount\tcumulative\n";
  const auto counts = histogram.counts();
  for (std::size_t d = 0; d < counts.size(); ++d) {
    if (counts[d] == 0) continue;
    append_number(text, d);
    text += '\t';
    append_number(text, counts[d]);
    text += '\t';
    append_number(text, cumulative.at(d));
    text += '\n';
  }
  flush(out, text);
}

void write_edges_tsv(const EdgeDegreeMatrix& matrix, const RhoSurface& surface, std::ostream& out) {
  std::string text = "# d1\td2\tX\tXcum\trho\n";
  const auto& points = surface.grid().points;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const auto rho = surface.rho(i, j);
      if (!rho) continue;
      append_number(text, points[i]);
      text += '\t';
      append_number(text, points[j]);
      text += '\t';
      append_number(text, matrix.at(static_cast<std::uint32_t>(points[i]), static_cast<std::uint32_t>(points[j])));
      text += '\t';
      append_number(text, surface.cumulative_edges().at_index(i, j));
      text += '\t';
      append_number(text, *rho);
      text += '\n';
    }
  }
  flush(out, text);
}

void write_dnn_tsv(const NeighborDegreeProfile& profile, std::ostream& out) {
  std::string text = "# d\tdnn\n";
  for (const auto& [d, dnn] : profile.points) {
    append_number(text, d);
    text += '\t';
    append_number(text, dnn);
    text += '\n';
  }
  flush(out, text);
}

void write_matrix_tsv(const EdgeDegreeMatrix& matrix, std::ostream& out) {
  std::string text = "# d1\td2\tX\n";
  for (const DegreeCell& c : matrix.cells()) {
    if (c.d1 < c.d2) continue;
    append_number(text, c.d1);
    text += '\t';
    append_number(text, c.d2);
    text += '\t';
    append_number(text, c.count);
    text += '\n';
  }
  flush(out, text);
}

DegreeHistogram read_degrees_tsv(std::istream& in) {
  std::vector<std::array<std::uint64_t, 3>> rows;
  for_each_row(in, [&](std::string_view line, std::size_t line_no) {
    rows.push_back(parse_row<3>(line, line_no));
  });
  std::vector<std::uint64_t> counts;
  for (const auto& row : rows) {
    if (row[0] >= counts.size()) counts.resize(row[0] + 1, 0);
    counts[row[0]] += row[1];
  }
  DegreeHistogram histogram(std::move(counts));
  const CumulativeDegree cumulative(histogram);
  for (const auto& row : rows) {
    if (cumulative.at(row[0]) != row[2]) {
      throw ValidationError("degrees TSV: cumulative column disagrees with counts at d = " +
                            std::to_string(row[0]));
    }
  }
  return histogram;
}

EdgeDegreeMatrix read_matrix_tsv(std::istream& in) {
  std::vector<DegreeCell> cells;
  for_each_row(in, [&](std::string_view line, std::size_t line_no) {
    const auto row = parse_row<3>(line, line_no);
    if (row[0] < row[1]) throw ParseError(line_no, "matrix rows must have d1 >= d2");
    if (row[0] > UINT32_MAX) throw ParseError(line_no, "degree out of range");
    if (row[2] == 0) return;
    const auto d1 = static_cast<std::uint32_t>(row[0]);
    const auto d2 = static_cast<std::uint32_t>(row[1]);
    if (d1 == d2 && row[2] % 2 != 0) {
      throw ValidationError("matrix TSV: diagonal cell (" + std::to_string(d1) + ", " +
                            std::to_string(d1) + ") must be even");
    }
    cells.push_back({d1, d2, row[2]});
    if (d1 != d2) cells.push_back({d2, d1, row[2]});
  });
  std::sort(cells.begin(), cells.end(), [](const DegreeCell& x, const DegreeCell& y) {
    return x.d1 != y.d1 ? x.d1 < y.d1 : x.d2 < y.d2;
  });
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].d1 == cells[i - 1].d1 && cells[i].d2 == cells[i - 1].d2) {
      throw ValidationError("matrix TSV: duplicate cell (" + std::to_string(cells[i].d1) + ", " +
                            std::to_string(cells[i].d2) + ")");
    }
  }
  return EdgeDegreeMatrix(std::move(cells));
}

}  // namespace pagraph
