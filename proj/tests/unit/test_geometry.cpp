#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "mgraph/error.hpp"
#include "mgraph/geometry.hpp"
#include "mgraph/harmonic.hpp"
#include "oracles.hpp"

using namespace mgraph;
using std::numbers::pi;

namespace {

LevelSet segment_set(Point2 a, Point2 b) { return make_level_set({Polyline{{a, b}, false}}); }

}  // namespace

TEST(Extract, VerticalLine)
{
    const double h = 0.02;
    const auto u = ScalarField::sample(make_disk_grid(h), [](Point2 p) { return p.x + 1e-3; });
    const LevelSet ls = extract_zero_set(u);
    ASSERT_EQ(ls.polylines.size(), 1u);
    EXPECT_NEAR(ls.total_length, 2.0, 2 * h);
    for (const auto& p : ls.polylines[0].vertices) {
        EXPECT_NEAR(p.x, -1e-3, 1e-12);
    }
}

TEST(Extract, ExactZerosArePerturbed)
{
    const auto u = ScalarField::sample(make_disk_grid(0.05), [](Point2 p) { return p.x; });
    const LevelSet ls = extract_zero_set(u);
    EXPECT_GT(ls.perturbed_corners, 0u);
    ASSERT_EQ(ls.polylines.size(), 1u);
    EXPECT_NEAR(ls.total_length, 2.0, 0.1);
}

TEST(Extract, CircleIsClosed)
{
    const auto u = ScalarField::sample(make_disk_grid(0.01), [](Point2 p) { return p.x * p.x + p.y * p.y - 0.25; });
    const LevelSet ls = extract_zero_set(u);
    ASSERT_EQ(ls.polylines.size(), 1u);
    EXPECT_TRUE(ls.polylines[0].closed);
    EXPECT_NEAR(ls.total_length, pi, 1e-3);
    for (const auto& p : ls.polylines[0].vertices) {
        EXPECT_NEAR(norm(p), 0.5, 1e-4);
    }
}

TEST(Extract, StripeChords)
{
    const auto u = sample(StripeSinCosh{10.0}, make_disk_grid(0.005));
    const LevelSet ls = extract_zero_set(u);
    EXPECT_EQ(ls.polylines.size(), 7u);
    EXPECT_NEAR(ls.total_length / oracle::chord_length(10.0), 1.0, 0.02);
    EXPECT_NEAR(ls.total_length, polyline_length(ls), 1e-12);
}

TEST(Extract, InvariantUnderPositiveScaling)
{
    const auto grid = make_disk_grid(0.03);
    const auto u = ScalarField::sample(grid, [](Point2 p) { return std::sin(4 * p.x + 0.1) + 0.5 * p.y; });
    const LevelSet a = extract_zero_set(u);
    const LevelSet b = extract_zero_set(7.5 * u);
    ASSERT_EQ(a.polylines.size(), b.polylines.size());
    EXPECT_NEAR(a.total_length, b.total_length, 1e-12);
    EXPECT_LT(hausdorff_distance(a, b, 0.01), 1e-12);
}

TEST(Extract, SaddleCellsProduceTwoCrossings)
{
    // xy changes sign across both axes; the zero set is the cross.
    const auto u = ScalarField::sample(make_disk_grid(0.05), [](Point2 p) { return (p.x - 0.013) * (p.y - 0.021); });
    const LevelSet ls = extract_zero_set(u);
    EXPECT_NEAR(ls.total_length, 4.0, 0.3);
    const LevelSet cross = make_level_set({Polyline{{{0.013, -1}, {0.013, 1}}, false},
                                           Polyline{{{-1, 0.021}, {1, 0.021}}, false}});
    for (const auto& line : ls.polylines) {
        for (const auto& p : line.vertices) {
            EXPECT_LT(distance_to(cross, p), 1e-12);
        }
    }
}

TEST(Extract, VanishingCellIsDegenerate)
{
    EXPECT_THROW(extract_zero_set(ScalarField::zeros(make_disk_grid(0.1))), DegenerateLevelSet);
}

TEST(Extract, ClipRadiusDropsOuterVertices)
{
    const auto u = ScalarField::sample(make_disk_grid(0.02), [](Point2 p) { return p.y - 0.001; });
    ExtractOptions opts;
    opts.clip_radius = 0.5;
    const LevelSet ls = extract_zero_set(u, opts);
    EXPECT_NEAR(ls.total_length, 1.0, 0.05);
    for (const auto& line : ls.polylines) {
        for (const auto& p : line.vertices) {
            EXPECT_LE(norm(p), 0.5);
        }
    }
}

TEST(Polylines, Length)
{
    Polyline square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, false};
    EXPECT_DOUBLE_EQ(polyline_length(square), 3.0);
    square.closed = true;
    EXPECT_DOUBLE_EQ(polyline_length(square), 4.0);
    EXPECT_DOUBLE_EQ(polyline_length(Polyline{{{0.5, 0.5}}, false}), 0.0);
    EXPECT_DOUBLE_EQ(make_level_set({square, Polyline{{{0, 0}, {3, 4}}, false}}).total_length, 9.0);
}

TEST(Polylines, DensifyRespectsStep)
{
    const LevelSet ls = segment_set({0, 0}, {1, 0});
    const auto pts = densify(ls, 0.1);
    ASSERT_GE(pts.size(), 11u);
    for (std::size_t k = 1; k < pts.size(); ++k) {
        EXPECT_LE(norm(pts[k] - pts[k - 1]), 0.1 + 1e-12);
    }
}

TEST(Distances, ParallelSegments)
{
    const LevelSet a = segment_set({-0.5, 0}, {0.5, 0});
    const LevelSet b = segment_set({-0.5, 0.1}, {0.5, 0.1});
    EXPECT_NEAR(hausdorff_distance(a, b, 0.01), 0.1, 1e-12);
    EXPECT_NEAR(hausdorff_distance(a, a, 0.01), 0.0, 1e-15);
    EXPECT_NEAR(distance_to(a, {0.8, 0.4}), 0.5, 1e-12);
    EXPECT_NEAR(distance_to(a, {0.2, -0.3}), oracle::segment_distance({0.2, -0.3}, {-0.5, 0}, {0.5, 0}), 1e-15);
}

TEST(Distances, ShorterSegmentIsOneSided)
{
    const LevelSet a = segment_set({-0.5, 0}, {0.5, 0});
    const LevelSet b = segment_set({-0.2, 0}, {0.2, 0});
    EXPECT_NEAR(hausdorff_distance(a, b, 0.01), 0.3, 1e-12);
}

TEST(Distances, EmptySetIsInfinitelyFar)
{
    const LevelSet a = segment_set({0, 0}, {1, 0});
    const LevelSet empty;
    EXPECT_EQ(hausdorff_distance(a, empty, 0.1), std::numeric_limits<double>::infinity());
    EXPECT_EQ(hausdorff_distance(empty, empty, 0.1), 0.0);
}

TEST(Neighborhood, FlatEndedTube)
{
    const auto u = ScalarField::sample(make_disk_grid(0.01), [](Point2 p) { return p.y - 0.002; });
    const LevelSet full = extract_zero_set(u);
    const LevelSet reference = segment_set({-0.5, 0}, {0.5, 0});
    const LevelSet near = restrict_to_neighborhood(full, reference, 0.04);
    ASSERT_EQ(near.polylines.size(), 1u);
    EXPECT_NEAR(near.total_length, 1.0, 1e-9);
    EXPECT_NEAR(hausdorff_distance(near, reference, 0.005), 0.002, 1e-9);
}

TEST(Neighborhood, ChainsSplitWhereTheyLeave)
{
    // A line crossing a horizontal segment at an angle leaves the tube on both sides.
    const auto u = ScalarField::sample(make_disk_grid(0.01), [](Point2 p) { return p.x - 0.1 * p.y - 0.001; });
    const LevelSet near = restrict_to_neighborhood(extract_zero_set(u), segment_set({-0.5, 0}, {0.5, 0}), 0.05);
    ASSERT_EQ(near.polylines.size(), 1u);
    EXPECT_NEAR(near.total_length, 0.1 * std::sqrt(1.01), 1e-6);
}

TEST(Margin, LinearField)
{
    const auto u = ScalarField::sample(make_disk_grid(0.02), [](Point2 p) { return p.x + 0.003; });
    const LevelSet ls = extract_zero_set(u);
    EXPECT_NEAR(transversality_margin(u, ls), 1.0, 1e-10);
    EXPECT_NEAR(ls.min_gradient, 1.0, 1e-10);
    EXPECT_NEAR(transversality_margin(2.0 * u, ls), 2.0, 1e-10);
}

TEST(Margin, InterpolatedGradientIsExactForLinearFields)
{
    const auto u = ScalarField::sample(make_disk_grid(0.1), [](Point2 p) { return 2 * p.x - p.y; });
    const auto g = gradient(u);
    for (const Point2 p : {Point2{0.0, 0.0}, Point2{0.33, -0.41}, Point2{-0.7, 0.69}}) {
        const Point2 v = interpolate_gradient(g, p);
        EXPECT_NEAR(v.x, 2.0, 1e-10);
        EXPECT_NEAR(v.y, -1.0, 1e-10);
    }
}

TEST(Area, RectangleDiskIntersection)
{
    EXPECT_NEAR(rectangle_disk_area(-1, 1, -1, 1), pi, 1e-14);
    EXPECT_NEAR(rectangle_disk_area(0, 1, 0, 1), pi / 4, 1e-14);
    EXPECT_NEAR(rectangle_disk_area(0.1, 0.2, -0.3, -0.1), 0.02, 1e-15);
    EXPECT_NEAR(rectangle_disk_area(1.0, 2.0, -1, 1), 0.0, 1e-15);
    // Half disk strip x in [0, 1]: pi / 2.
    EXPECT_NEAR(rectangle_disk_area(0, 1, -1, 1), pi / 2, 1e-14);
}

TEST(Area, GraphAreaOfPlanes)
{
    const auto grid = make_disk_grid(0.02);
    EXPECT_NEAR(graph_area(ScalarField::zeros(grid)), pi, 1e-10);
    EXPECT_NEAR(graph_area(ScalarField::sample(grid, [](Point2 p) { return p.x; })), pi * std::sqrt(2.0), 1e-9);
}

TEST(Area, GraphAreaOfParaboloid)
{
    // u = (x^2 + y^2) / 2: area = 2 pi / 3 (2^(3/2) - 1).
    const auto grid = make_disk_grid(0.01);
    const auto u = ScalarField::sample(grid, [](Point2 p) { return 0.5 * (p.x * p.x + p.y * p.y); });
    EXPECT_NEAR(graph_area(u), 2 * pi / 3 * (std::pow(2.0, 1.5) - 1), 2e-3);
}
