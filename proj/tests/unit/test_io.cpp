#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "mgraph/error.hpp"
#include "mgraph/field_io.hpp"
#include "mgraph/harmonic.hpp"
#include "mgraph/report_io.hpp"

using namespace mgraph;
using nlohmann::json;

TEST(FieldText, RoundTripIsExact)
{
    const auto grid = make_disk_grid(0.1);
    const auto f = ScalarField::sample(grid, [](Point2 p) { return std::exp(p.x) / 3.0 - p.y * 1e-9; });
    std::stringstream buf;
    write_field_text(buf, f);
    EXPECT_EQ(buf.str().rfind("# mgraph-field", 0), 0u);
    const ScalarField g = read_field_text(buf, grid);
    ASSERT_EQ(g.size(), f.size());
    EXPECT_FALSE(g.has_trace());
    for (std::size_t k = 0; k < f.size(); ++k) {
        EXPECT_EQ(g[k], f[k]);
    }
}

TEST(FieldText, ErrorsNameTheLine)
{
    const auto grid = make_disk_grid(0.5);
    std::istringstream bad("# header\n0 -0.5 1\n0.3 0 2\n");
    try {
        (void)read_field_text(bad, grid);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
    }
    std::istringstream garbage("# header\nfoo\n");
    EXPECT_THROW((void)read_field_text(garbage, grid), ParseError);
}

TEST(IterationLog, OneObjectPerStepAndASummary)
{
    const auto v = sample(StripeSinCosh{3.0}, make_disk_grid(0.05));
    const auto run = picard_solve(v, PicardConfig{});
    std::stringstream buf;
    write_iteration_log(buf, run.report);

    std::vector<json> lines;
    for (std::string line; std::getline(buf, line);) {
        lines.push_back(json::parse(line));
    }
    ASSERT_EQ(lines.size(), run.report.iterations.size() + 1);
    EXPECT_TRUE(lines.front()["ratio"].is_null());
    EXPECT_EQ(lines.front()["iteration"], 0);
    for (const char* key : {"u_c2", "diff_c2", "F_c0", "poisson_iterations", "poisson_residual", "poisson_unknowns"}) {
        EXPECT_TRUE(lines.front().contains(key)) << key;
    }
    if (lines.size() > 2) {
        EXPECT_TRUE(lines[1]["ratio"].is_number());
    }
    const json& last = lines.back();
    EXPECT_EQ(last["final"], true);
    EXPECT_EQ(last["converged"], true);
    EXPECT_DOUBLE_EQ(last["epsilon"].get<double>(), 0.05);
    EXPECT_EQ(last, json::parse(iteration_summary_json(run.report)));
}

TEST(LevelSetText, ChainsAreSeparatedAndClosedOnesRepeatTheirStart)
{
    const LevelSet ls = make_level_set({Polyline{{{0, 0}, {1, 0}, {1, 1}}, true}, Polyline{{{0.5, 0.25}, {0.75, 0}}, false}});
    std::stringstream buf;
    write_level_set_text(buf, ls);
    const std::string text = buf.str();
    EXPECT_EQ(text, "0 0\n1 0\n1 1\n0 0\n\n0.5 0.25\n0.75 0\n");

    const json s = json::parse(level_set_summary_json(ls));
    EXPECT_EQ(s["chains"], 2);
    EXPECT_EQ(s["closed_chains"], 1);
    EXPECT_DOUBLE_EQ(s["length"].get<double>(), ls.total_length);
    EXPECT_TRUE(s.contains("margin"));
    EXPECT_EQ(s["perturbed_corners"], 0);
}
