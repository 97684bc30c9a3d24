#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mgraph/error.hpp"
#include "mgraph/poisson.hpp"
#include "oracles.hpp"

using namespace mgraph;

namespace {

ScalarField constant(const GridPtr& grid, double c)
{
    return ScalarField::sample(grid, [c](Point2) { return c; });
}

// w = sin(2x) sin(2y) (1 - r^2) and its Laplacian.
double bubble(Point2 p) { return std::sin(2 * p.x) * std::sin(2 * p.y) * (1 - p.x * p.x - p.y * p.y); }

double bubble_laplacian(Point2 p)
{
    const double s = std::sin(2 * p.x) * std::sin(2 * p.y);
    const double q = 1 - p.x * p.x - p.y * p.y;
    const double sx = 2 * std::cos(2 * p.x) * std::sin(2 * p.y);
    const double sy = 2 * std::sin(2 * p.x) * std::cos(2 * p.y);
    return -8 * s * q + 2 * (sx * (-2 * p.x) + sy * (-2 * p.y)) - 4 * s;
}

}  // namespace

TEST(Poisson, ParaboloidIsReproducedExactly)
{
    for (const double h : {0.1, 0.037, 0.02}) {
        const auto grid = make_disk_grid(h);
        const auto [w, stats] = solve_dirichlet({constant(grid, -4.0), {}}, 1e-12);
        EXPECT_LT(oracle::max_error(w.values(), *grid, [](Point2 p) { return 1 - p.x * p.x - p.y * p.y; }, false),
                  1e-8)
            << "h = " << h;
        EXPECT_EQ(stats.unknowns, grid->size());
        EXPECT_LE(stats.relative_residual, 1e-12);
    }
}

TEST(Poisson, QuadraticWithBoundaryData)
{
    const auto grid = make_disk_grid(0.03);
    const auto exact = [](Point2 p) { return p.x * p.x - 2 * p.y * p.y + p.x * p.y + 0.3 * p.y; };
    const auto [w, stats] = solve_dirichlet({constant(grid, -2.0), exact}, 1e-12);
    EXPECT_LT(oracle::max_error(w.values(), *grid, exact, false), 1e-8);
}

TEST(Poisson, ZeroDataGivesZero)
{
    const auto grid = make_disk_grid(0.05);
    const auto [w, stats] = solve_dirichlet({ScalarField::zeros(grid), {}});
    EXPECT_EQ(sup_norm(w), 0.0);
}

TEST(Poisson, ManufacturedSolutionConvergesAtSecondOrder)
{
    std::vector<double> errors;
    for (const double h : {0.04, 0.02, 0.01}) {
        const auto grid = make_disk_grid(h);
        const auto [w, stats] = solve_dirichlet({ScalarField::sample(grid, bubble_laplacian), {}}, 1e-12);
        errors.push_back(oracle::max_error(w.values(), *grid, bubble, false));
    }
    EXPECT_NEAR(oracle::order(errors[0], errors[1]), 2.0, 0.3);
    EXPECT_NEAR(oracle::order(errors[1], errors[2]), 2.0, 0.3);
}

TEST(Poisson, SolutionIsLinearInData)
{
    const auto grid = make_disk_grid(0.04);
    const auto f1 = ScalarField::sample(grid, [](Point2 p) { return std::exp(p.x) * p.y; });
    const auto f2 = ScalarField::sample(grid, [](Point2 p) { return std::cos(3 * p.x + p.y); });
    const auto u1 = solve_dirichlet({f1, {}}, 1e-12).first;
    const auto u2 = solve_dirichlet({f2, {}}, 1e-12).first;
    const auto u12 = solve_dirichlet({2.0 * f1 - 3.0 * f2, {}}, 1e-12).first;
    const auto diff = u12 - (2.0 * u1 - 3.0 * u2);
    EXPECT_LT(sup_norm(diff), 1e-9);
}

TEST(Poisson, MirrorSymmetricDataGivesSymmetricSolution)
{
    const auto grid = make_disk_grid(0.03);
    const auto f = ScalarField::sample(grid, [](Point2 p) { return std::cos(2 * p.x) + p.y; });
    const auto u = solve_dirichlet({f, {}}, 1e-12).first;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const auto ij = grid->lattice_index(k);
        const auto mirror = grid->node_at(-ij[0], ij[1]);
        ASSERT_TRUE(mirror.has_value());
        EXPECT_NEAR(u[k], u[*mirror], 1e-9);
    }
}

TEST(Poisson, NegativeSourceGivesPositiveSolution)
{
    const auto grid = make_disk_grid(0.04);
    const auto f = ScalarField::sample(grid, [](Point2 p) { return -1.0 - p.x * p.x; });
    const PoissonProblem problem{f, {}};
    const auto u = solve_dirichlet(problem, 1e-12).first;
    for (std::size_t k = 0; k < u.size(); ++k) {
        EXPECT_GT(u[k], 0.0);
    }
    const auto check = maximum_principle_check(problem, u);
    EXPECT_TRUE(check.holds);
    EXPECT_GE(check.margin, 0.0);
    EXPECT_DOUBLE_EQ(check.bound, sup_norm(f) / 4);
    EXPECT_DOUBLE_EQ(check.sup_solution, sup_norm(u));
}

TEST(Poisson, MaximumPrincipleWithBoundaryData)
{
    const auto grid = make_disk_grid(0.03);
    const PoissonProblem problem{ScalarField::sample(grid, [](Point2 p) { return std::sin(5 * p.x); }),
                                 [](Point2 p) { return p.x * p.y; }};
    const auto u = solve_dirichlet(problem).first;
    EXPECT_TRUE(maximum_principle_check(problem, u).holds);
}

TEST(Poisson, ApplyMatchesLaplacian)
{
    const auto grid = make_disk_grid(0.05);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> values(grid->size()), trace(grid->cut_arms().size());
    for (auto& v : values) {
        v = dist(rng);
    }
    for (auto& v : trace) {
        v = dist(rng);
    }
    const ScalarField u(grid, values, trace);
    const LaplaceOperator op(grid);
    const auto a = op.apply(u);
    const auto b = laplacian(u);
    for (std::size_t k = 0; k < u.size(); ++k) {
        EXPECT_NEAR(a[k], b[k], 1e-9 * (1.0 + std::abs(b[k])));
    }
    EXPECT_THROW((void)op.apply(u.without_trace()), InvalidParameter);
}

TEST(Poisson, SolveInvertsApply)
{
    const auto grid = make_disk_grid(0.05);
    const LaplaceOperator op(grid);
    const auto u = ScalarField::sample(grid, [](Point2 p) { return std::exp(p.x - p.y); });
    const auto rhs = op.apply(u);
    const auto [w, stats] = op.solve(rhs, u.trace(), 1e-13);
    EXPECT_LT(sup_norm(w - u.without_trace()), 1e-9);
}

TEST(Poisson, RejectsToleranceOutsideRange)
{
    const auto grid = make_disk_grid(0.1);
    EXPECT_THROW(solve_dirichlet({ScalarField::zeros(grid), {}}, 0.1), InvalidParameter);
    EXPECT_THROW(solve_dirichlet({ScalarField::zeros(grid), {}}, 0.0), InvalidParameter);
}

TEST(Poisson, BoundaryTraceFollowsCutOrder)
{
    const auto grid = make_disk_grid(0.1);
    const auto trace = boundary_trace(*grid, [](Point2 p) { return p.x + 2 * p.y; });
    ASSERT_EQ(trace.size(), grid->cut_arms().size());
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const Point2 p = grid->cut_arms()[k].point;
        EXPECT_DOUBLE_EQ(trace[k], p.x + 2 * p.y);
    }
}
