#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mgraph/error.hpp"
#include "mgraph/grid.hpp"
#include "oracles.hpp"

using namespace mgraph;

TEST(DiskGrid, HalfSpacingGeometry)
{
    const DiskGrid g(0.5);
    EXPECT_EQ(g.half_width(), 2);
    EXPECT_EQ(g.size(), 9u);
    EXPECT_EQ(g.interior_count(), 1u);
    EXPECT_EQ(g.kind_at(0, 0), NodeKind::Interior);
    EXPECT_EQ(g.kind_at(1, 0), NodeKind::BoundaryCut);
    EXPECT_EQ(g.kind_at(1, 1), NodeKind::BoundaryCut);
    EXPECT_EQ(g.kind_at(2, 0), NodeKind::Exterior);

    // (0.5, 0) reaches the circle at x = 1 after a full arm.
    const auto east = *g.node_at(1, 0);
    EXPECT_NEAR(g.arm(east, Direction::East), 1.0, 1e-12);
    // (0.5, 0.5) meets it at x = sqrt(3)/2.
    const auto corner = *g.node_at(1, 1);
    EXPECT_NEAR(g.arm(corner, Direction::East), (std::sqrt(0.75) - 0.5) / 0.5, 1e-12);
    EXPECT_NEAR(g.arm(corner, Direction::West), 1.0, 0.0);
}

TEST(DiskGrid, RejectsCoarseOrNonPositiveSpacing)
{
    EXPECT_THROW(DiskGrid(1.0), InvalidParameter);
    EXPECT_THROW(DiskGrid(0.0), InvalidParameter);
    EXPECT_THROW(DiskGrid(-0.1), InvalidParameter);
}

TEST(DiskGrid, ActiveCountMatchesBruteForce)
{
    for (const double h : {0.5, 0.3, 0.1, 0.037, 0.01}) {
        EXPECT_EQ(DiskGrid(h).size(), oracle::active_count(h)) << "h = " << h;
    }
    const DiskGrid g(0.01);
    EXPECT_NEAR(static_cast<double>(g.size()) / (std::numbers::pi / (0.01 * 0.01)), 1.0, 0.02);
}

TEST(DiskGrid, NumberingIsRowMajor)
{
    const DiskGrid g(0.1);
    for (std::size_t k = 1; k < g.size(); ++k) {
        const auto a = g.lattice_index(k - 1);
        const auto b = g.lattice_index(k);
        EXPECT_TRUE(a[1] < b[1] || (a[1] == b[1] && a[0] < b[0]));
    }
}

TEST(DiskGrid, CutPointsLieOnTheCircle)
{
    const DiskGrid g(0.07);
    ASSERT_GT(g.cut_arms().size(), 0u);
    for (const auto& cut : g.cut_arms()) {
        EXPECT_NEAR(norm(cut.point), 1.0, 1e-12);
        EXPECT_GT(cut.fraction, 0.0);
        EXPECT_LE(cut.fraction, 1.0);
        EXPECT_EQ(g.kind(cut.node), NodeKind::BoundaryCut);
    }
}

TEST(Stencils, LinearFieldIsDifferentiatedExactly)
{
    const auto grid = make_disk_grid(0.05);
    const auto f = ScalarField::sample(grid, [](Point2 p) { return 2.0 * p.x - 3.0 * p.y + 0.5; });
    const auto g = gradient(f);
    const auto H = hessian(f);
    const auto L = laplacian(f);
    for (std::size_t k = 0; k < f.size(); ++k) {
        EXPECT_NEAR(g.values[k][0], 2.0, 1e-10);
        EXPECT_NEAR(g.values[k][1], -3.0, 1e-10);
        EXPECT_NEAR(H.values[k].xx, 0.0, 1e-8);
        EXPECT_NEAR(H.values[k].xy, 0.0, 1e-8);
        EXPECT_NEAR(H.values[k].yy, 0.0, 1e-8);
        EXPECT_NEAR(L[k], 0.0, 1e-8);
    }
}

TEST(Stencils, QuadraticFieldIsDifferentiatedExactly)
{
    const auto grid = make_disk_grid(0.05);
    const auto q = [](Point2 p) { return 0.7 * p.x * p.x + 1.3 * p.x * p.y - 0.4 * p.y * p.y + p.x; };
    const auto f = ScalarField::sample(grid, q);
    const auto g = gradient(f);
    const auto H = hessian(f);
    const auto L = laplacian(f);
    for (std::size_t k = 0; k < f.size(); ++k) {
        const Point2 p = grid->position(k);
        EXPECT_NEAR(g.values[k][0], 1.4 * p.x + 1.3 * p.y + 1.0, 1e-9);
        EXPECT_NEAR(g.values[k][1], 1.3 * p.x - 0.8 * p.y, 1e-9);
        EXPECT_NEAR(H.values[k].xx, 1.4, 1e-7);
        EXPECT_NEAR(H.values[k].xy, 1.3, 1e-7);
        EXPECT_NEAR(H.values[k].yy, -0.8, 1e-7);
        EXPECT_NEAR(L[k], 0.6, 1e-7);
    }
}

TEST(Stencils, SecondOrderAgainstClosedForm)
{
    const auto t = oracle::sin_cos(2.0, 1.0, 3.0);
    std::vector<double> eg, eh, el;
    for (const double h : {0.04, 0.02, 0.01}) {
        const auto grid = make_disk_grid(h);
        const auto f = ScalarField::sample(grid, t.f);
        const auto g = gradient(f);
        const auto H = hessian(f);
        const auto L = laplacian(f);
        double gerr = 0.0, herr = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            const Point2 p = grid->position(k);
            gerr = std::max({gerr, std::abs(g.values[k][0] - t.fx(p)), std::abs(g.values[k][1] - t.fy(p))});
            if (grid->kind(k) == NodeKind::Interior) {
                herr = std::max({herr, std::abs(H.values[k].xx - t.fxx(p)), std::abs(H.values[k].xy - t.fxy(p)),
                                 std::abs(H.values[k].yy - t.fyy(p))});
            }
        }
        eg.push_back(gerr);
        eh.push_back(herr);
        el.push_back(oracle::max_error(L.values(), *grid, [&](Point2 p) { return t.fxx(p) + t.fyy(p); }, true));
    }
    for (const auto* e : {&eg, &eh, &el}) {
        const double p = oracle::order((*e)[0], (*e)[2]) / 2.0;
        EXPECT_GE(p, 1.7);
        EXPECT_LE(p, 2.3);
    }
}

TEST(Norms, CkOfCoordinateIsOne)
{
    const auto f = ScalarField::sample(make_disk_grid(0.02), [](Point2 p) { return p.x; });
    EXPECT_NEAR(ck_norm(f, 1), 1.0, 1e-10);
    EXPECT_NEAR(ck_norm(f, 2), 1.0, 1e-10);
    EXPECT_LT(ck_norm(f, 0), 1.0);
}

TEST(Norms, C2OfSineIsItsCurvature)
{
    const auto f = ScalarField::sample(make_disk_grid(0.005), [](Point2 p) { return std::sin(5.0 * p.x); });
    EXPECT_NEAR(ck_norm(f, 2) / 25.0, 1.0, 0.02);
}

TEST(Norms, RejectsUnsupportedOrder)
{
    const auto f = ScalarField::zeros(make_disk_grid(0.1));
    EXPECT_THROW((void)ck_norm(f, 3), InvalidParameter);
    EXPECT_THROW((void)ck_norm(f, -1), InvalidParameter);
}

TEST(Norms, MonotoneInOrderAndHomogeneous)
{
    const auto t = oracle::sin_cos(3.0, 0.2, 2.0);
    const auto f = ScalarField::sample(make_disk_grid(0.02), t.f);
    EXPECT_LE(ck_norm(f, 0), ck_norm(f, 1));
    EXPECT_LE(ck_norm(f, 1), ck_norm(f, 2));
    for (int k = 0; k <= 2; ++k) {
        EXPECT_NEAR(ck_norm(-2.5 * f, k), 2.5 * ck_norm(f, k), 1e-12 * ck_norm(f, k));
    }
}

TEST(Norms, SupNormRespectsNodeSets)
{
    const auto grid = make_disk_grid(0.1);
    const auto f = ScalarField::sample(grid, [](Point2 p) { return p.x * p.x + p.y * p.y; });
    EXPECT_GE(sup_norm(f), sup_norm(f, NodeSet::Interior));
    EXPECT_EQ(sup_norm(f), std::max(sup_norm(f, NodeSet::Interior), sup_norm(f, NodeSet::BoundaryCut)));
}

TEST(ScalarField, ArithmeticKeepsTrace)
{
    const auto grid = make_disk_grid(0.1);
    const auto a = ScalarField::sample(grid, [](Point2 p) { return p.x; });
    const auto b = ScalarField::sample(grid, [](Point2 p) { return p.y; });
    const auto c = 2.0 * a - b;
    ASSERT_TRUE(c.has_trace());
    for (std::size_t k = 0; k < c.trace().size(); ++k) {
        const Point2 p = grid->cut_arms()[k].point;
        EXPECT_NEAR(c.trace()[k], 2.0 * p.x - p.y, 1e-15);
    }
    EXPECT_FALSE(c.without_trace().has_trace());
}
