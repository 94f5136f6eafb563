#include <gtest/gtest.h>

#include <sstream>

#include "pagraph/analysis_io.hpp"
#include "pagraph/buckley_osthus.hpp"
#include "pagraph/errors.hpp"
#include "pagraph/graph.hpp"

namespace pagraph {
namespace {

std::string render_degrees(const DegreeHistogram& h) {
  std::ostringstream out;
  write_degrees_tsv(h, out);
  return out.str();
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(2.0 / 9), "0.2222222222222222");
  EXPECT_EQ(format_double(1e-300), "1e-300");
}

TEST(DegreesTsv, PathGraph) {
  const DegreeHistogram h = degree_histogram(simplify(Graph(3, {{0, 1}, {1, 2}})));
  EXPECT_EQ(render_degrees(h), "# d\tcount\tcumulative\n1\t2\t1\n2\t1\t0\n");
}

TEST(DegreesTsv, RoundTripKeepsIsolatedVertices) {
  const SimpleGraph g = simplify(generate_bo({0.5, 2, 3000, 9}));
  const DegreeHistogram h = degree_histogram(g);
  std::istringstream in(render_degrees(h));
  EXPECT_EQ(read_degrees_tsv(in), h);

  const DegreeHistogram with_isolated = degree_histogram(simplify(Graph(4, {{0, 1}})));
  std::istringstream in2(render_degrees(with_isolated));
  const DegreeHistogram back = read_degrees_tsv(in2);
  EXPECT_EQ(back.count(0), 2u);
  EXPECT_EQ(back.vertex_count(), 4u);
}

TEST(DegreesTsv, Errors) {
  std::istringstream bad_cumulative("# d\tcount\tcumulative\n1\t2\t5\n");
  EXPECT_THROW(read_degrees_tsv(bad_cumulative), ValidationError);
  std::istringstream bad_number("1\t2\t0\n1\tx\t0\n");
  try {
    read_degrees_tsv(bad_number);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream short_row("1\t2\n");
  EXPECT_THROW(read_degrees_tsv(short_row), ParseError);
}

TEST(MatrixTsv, RoundTrip) {
  const EdgeDegreeMatrix x = edge_degree_matrix(simplify(generate_bo({0.3, 3, 2000, 4})));
  std::ostringstream out;
  write_matrix_tsv(x, out);
  std::istringstream in(out.str());
  EXPECT_EQ(read_matrix_tsv(in), x);
}

TEST(MatrixTsv, Errors) {
  std::istringstream upper("1\t2\t4\n");
  EXPECT_THROW(read_matrix_tsv(upper), ParseError);
  std::istringstream odd_diagonal("2\t2\t3\n");
  EXPECT_THROW(read_matrix_tsv(odd_diagonal), ValidationError);
  std::istringstream duplicate("3\t1\t2\n3\t1\t2\n");
  EXPECT_THROW(read_matrix_tsv(duplicate), ValidationError);
}

TEST(EdgesTsv, PathGraph) {
  const SimpleGraph g = simplify(Graph(3, {{0, 1}, {1, 2}}));
  const EdgeDegreeMatrix x = edge_degree_matrix(g);
  const DegreeHistogram h = degree_histogram(g);
  const RhoSurface s = rho_surface(h, x, LogGrid{1.01, {0, 1, 2}});
  std::ostringstream out;
  write_edges_tsv(x, s, out);
  EXPECT_EQ(out.str(),
            "# d1\td2\tX\tXcum\trho\n"
            "0\t0\t0\t2\t0.2222222222222222\n"
            "1\t0\t0\t2\t0.6666666666666666\n"
            "1\t1\t0\t0\t0\n");
}

TEST(DnnTsv, PathGraph) {
  std::ostringstream out;
  write_dnn_tsv(d_nn_profile(edge_degree_matrix(simplify(Graph(3, {{0, 1}, {1, 2}})))), out);
  EXPECT_EQ(out.str(), "# d\tdnn\n1\t2\n2\t1\n");
}

}  // namespace
}  // namespace pagraph
