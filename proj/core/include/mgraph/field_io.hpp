#pragma once

#include <iosfwd>

#include "mgraph/grid.hpp"

namespace mgraph {

/// Text table, one "x y value" line per active node in row-major lattice order,
/// exterior nodes omitted. Lines starting with '#' are comments; the writer emits
/// a single "# mgraph-field h=<h> nodes=<count>" header. Values use 17 significant
/// digits so that a read-back is exact.
void write_field_text(std::ostream& out, const ScalarField& f);

/// Reads a table written by write_field_text() onto `grid`. Node positions must
/// match the grid to within 1e-9; the boundary trace is not stored and comes back empty.
/// Throws ParseError with the offending line number.
ScalarField read_field_text(std::istream& in, GridPtr grid);

}  // namespace mgraph
