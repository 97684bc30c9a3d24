#include "mgraph/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mgraph/error.hpp"

namespace mgraph {

void write_field_text(std::ostream& out, const ScalarField& f)
{
    const DiskGrid& grid = f.grid();
    char line[128];
    std::snprintf(line, sizeof line, "# mgraph-field h=%.17g nodes=%zu\n", grid.spacing(), grid.size());
    out << line;
    for (std::size_t node = 0; node < grid.size(); ++node) {
        const Point2 p = grid.position(node);
        std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", p.x, p.y, f[node]);
        out << line;
    }
}

ScalarField read_field_text(std::istream& in, GridPtr grid)
{
    std::vector<double> values;
    values.reserve(grid->size());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream fields(line);
        double x = 0.0;
        double y = 0.0;
        double v = 0.0;
        if (!(fields >> x >> y >> v)) {
            throw ParseError("expected \"x y value\"", line_no);
        }
        std::string rest;
        if (fields >> rest) {
            throw ParseError("trailing characters after value", line_no);
        }
        if (values.size() >= grid->size()) {
            throw ParseError("more rows than active grid nodes", line_no);
        }
        const Point2 expected = grid->position(values.size());
        if (std::abs(expected.x - x) > 1e-9 || std::abs(expected.y - y) > 1e-9) {
            throw ParseError("node position does not match the grid", line_no);
        }
        if (!std::isfinite(v)) {
            throw ParseError("non-finite value", line_no);
        }
        values.push_back(v);
    }
    if (values.size() != grid->size()) {
        throw ParseError("expected " + std::to_string(grid->size()) + " rows, got " + std::to_string(values.size()),
                         line_no);
    }
    return ScalarField(std::move(grid), std::move(values));
}

}  // namespace mgraph
