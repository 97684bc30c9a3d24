#include "mgraph/report_io.hpp"

#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

namespace mgraph {

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json summary_object(const IterationReport& report)
{
    return json{{"final", true},
                {"epsilon", report.epsilon},
                {"gamma", report.gamma},
                {"lambda", report.lambda},
                {"iterations", report.iterations.size()},
                {"u0_c2", report.u0_norm},
                {"max_u_c2", report.max_u_norm},
                {"converged", report.converged},
                {"induction_bound_held", report.induction_bound_held},
                {"mean_ratio", optional_number(report.mean_ratio())},
                {"deviation_c2", report.deviation_c2},
                {"deviation_c0", report.deviation_c0},
                {"ms_residual_interior", report.ms_residual_interior},
                {"ms_residual_boundary", report.ms_residual_boundary}};
}

}  // namespace

void write_iteration_log(std::ostream& out, const IterationReport& report)
{
    for (const auto& rec : report.iterations) {
        const json line{{"iteration", rec.index},
                        {"u_c2", rec.u_norm},
                        {"diff_c2", rec.diff_norm},
                        {"ratio", optional_number(rec.ratio)},
                        {"F_c0", rec.f_sup},
                        {"poisson_iterations", rec.solve.iterations},
                        {"poisson_residual", rec.solve.relative_residual},
                        {"poisson_unknowns", rec.solve.unknowns}};
        out << line.dump() << '\n';
    }
    out << summary_object(report).dump() << '\n';
}

std::string iteration_summary_json(const IterationReport& report) { return summary_object(report).dump(); }

void write_level_set_text(std::ostream& out, const LevelSet& ls)
{
    char buf[64];
    const auto emit = [&](Point2 p) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
        out << buf;
    };
    bool first = true;
    for (const auto& line : ls.polylines) {
        if (!first) {
            out << '\n';
        }
        first = false;
        for (const Point2 p : line.vertices) {
            emit(p);
        }
        if (line.closed && !line.vertices.empty()) {
            emit(line.vertices.front());
        }
    }
}

std::string level_set_summary_json(const LevelSet& ls)
{
    std::size_t closed = 0;
    for (const auto& line : ls.polylines) {
        closed += line.closed ? 1 : 0;
    }
    return json{{"length", ls.total_length},
                {"margin", ls.min_gradient},
                {"chains", ls.polylines.size()},
                {"closed_chains", closed},
                {"perturbed_corners", ls.perturbed_corners}}
        .dump();
}

}  // namespace mgraph
