#pragma once

#include <iosfwd>
#include <string>

#include "pagraph/stats.hpp"

namespace pagraph {

/// Shortest decimal form that round-trips (std::to_chars); identical output
/// on every platform.
std::string format_double(double value);

// Plot-data files. Each starts with one '#'-prefixed header naming the
// columns; every other line is a TAB-separated row.
//
//   degrees: d  count  cumulative        one row per degree with count > 0
//   edges:   d1 d2 X Xcum rho            grid pairs d1 >= d2 with rho defined
//   dnn:     d  dnn                      rows of d_nn_profile
//   matrix:  d1 d2 X                     every nonzero cell with d1 >= d2
void write_degrees_tsv(const DegreeHistogram& histogram, std::ostream& out);
void write_edges_tsv(const EdgeDegreeMatrix& matrix, const RhoSurface& surface, std::ostream& out);
void write_dnn_tsv(const NeighborDegreeProfile& profile, std::ostream& out);
void write_matrix_tsv(const EdgeDegreeMatrix& matrix, std::ostream& out);

/// Inverse of write_degrees_tsv (the cumulative column is checked, not used).
DegreeHistogram read_degrees_tsv(std::istream& in);
/// Inverse of write_matrix_tsv.
EdgeDegreeMatrix read_matrix_tsv(std::istream& in);

}  // namespace pagraph
