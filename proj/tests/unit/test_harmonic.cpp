#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "mgraph/curve.hpp"
#include "mgraph/error.hpp"
#include "mgraph/harmonic.hpp"
#include "oracles.hpp"

using namespace mgraph;
using std::numbers::pi;

TEST(Seeds, PointValues)
{
    EXPECT_NEAR(evaluate(HarmonicPolynomialReZm{1}, {0.3, -0.7}), 0.3, 1e-15);
    EXPECT_NEAR(evaluate(HarmonicPolynomialReZm{2}, {0.3, -0.7}), 0.09 - 0.49, 1e-15);
    EXPECT_NEAR(evaluate(StripeSinCosh{pi}, {0.5, 0.0}), 1.0, 1e-15);
    EXPECT_NEAR(evaluate(StripeSinCosh{2.0}, {0.1, 0.4}), std::sin(0.2) * std::cosh(0.8), 1e-14);
}

TEST(Seeds, GradientMatchesDifferenceQuotient)
{
    PolynomialExpansion poly{0.1, {0.5, -0.2, 0.3}, {0.0, 0.7, -0.4}};
    for (const HarmonicSeed& seed : {HarmonicSeed{StripeSinCosh{3.0}}, HarmonicSeed{HarmonicPolynomialReZm{4}},
                                    HarmonicSeed{poly}}) {
        const Point2 p{0.31, -0.42};
        const double d = 1e-6;
        const Point2 g = evaluate_gradient(seed, p);
        EXPECT_NEAR(g.x, (evaluate(seed, {p.x + d, p.y}) - evaluate(seed, {p.x - d, p.y})) / (2 * d), 1e-7);
        EXPECT_NEAR(g.y, (evaluate(seed, {p.x, p.y + d}) - evaluate(seed, {p.x, p.y - d})) / (2 * d), 1e-7);
    }
}

TEST(Seeds, InvalidParametersAreRejected)
{
    EXPECT_THROW(validate(StripeSinCosh{0.0}), InvalidParameter);
    EXPECT_THROW(validate(HarmonicPolynomialReZm{-1}), InvalidParameter);
    EXPECT_THROW(validate(PolynomialExpansion{0.0, {1.0}, {}}), InvalidParameter);
}

TEST(Seeds, NodalLineCount)
{
    EXPECT_EQ(nodal_line_count(StripeSinCosh{pi}), 1);
    EXPECT_EQ(nodal_line_count(StripeSinCosh{10.0}), 7);
    EXPECT_EQ(nodal_line_count(StripeSinCosh{100.0}), 63);
}

TEST(Seeds, PredictedNodalLength)
{
    EXPECT_NEAR(predicted_nodal_length(StripeSinCosh{pi}), 2.0, 1e-12);
    EXPECT_NEAR(predicted_nodal_length(StripeSinCosh{10.0}), 10.246, 1e-3);
    for (const double k : {4.0, 7.5, 10.0, 23.0}) {
        EXPECT_NEAR(predicted_nodal_length(StripeSinCosh{k}), oracle::chord_length(k), 1e-12);
    }
}

TEST(Seeds, DiscreteHarmonicityIsSecondOrder)
{
    const HarmonicSeed seed = StripeSinCosh{3.0};
    const double coarse = verify_harmonicity(seed, make_disk_grid(0.04));
    const double fine = verify_harmonicity(seed, make_disk_grid(0.02));
    EXPECT_NEAR(oracle::order(coarse, fine), 2.0, 0.3);
    EXPECT_LT(verify_harmonicity(HarmonicPolynomialReZm{2}, make_disk_grid(0.05)), 1e-9);
}

TEST(Seeds, ParseAndDescribe)
{
    EXPECT_DOUBLE_EQ(std::get<StripeSinCosh>(parse_seed("stripe:10")).frequency, 10.0);
    EXPECT_DOUBLE_EQ(std::get<StripeSinCosh>(parse_seed("stripe:pi")).frequency, pi);
    EXPECT_EQ(std::get<HarmonicPolynomialReZm>(parse_seed("rezm:3")).degree, 3);
    EXPECT_THROW(parse_seed("stripe:"), InvalidParameter);
    EXPECT_THROW(parse_seed("stripe:-2"), InvalidParameter);
    EXPECT_THROW(parse_seed("bessel:2"), InvalidParameter);
    EXPECT_FALSE(describe(parse_seed("rezm:3")).empty());
}

TEST(CauchyFit, SegmentIsFitByY)
{
    const CauchyFit fit = fit_cauchy_data(builtin_curve("segment"), 1);
    ASSERT_EQ(fit.seed.degree(), 1);
    EXPECT_NEAR(fit.seed.a0, 0.0, 1e-10);
    EXPECT_NEAR(fit.seed.cos_coeffs[0], 0.0, 1e-10);
    EXPECT_NEAR(fit.seed.sin_coeffs[0], 1.0, 1e-9);
    EXPECT_LT(fit.report.residual_value, 1e-10);
    EXPECT_LT(fit.report.residual_normal, 1e-9);
}

TEST(CauchyFit, ObjectiveDoesNotIncreaseWithDegree)
{
    const CurveSpec arc = builtin_curve("arc");
    double previous = fit_cauchy_data(arc, 1).report.objective;
    for (int m = 2; m <= 10; ++m) {
        const double objective = fit_cauchy_data(arc, m).report.objective;
        EXPECT_LE(objective, previous * (1.0 + 1e-6) + 1e-14) << "M = " << m;
        previous = objective;
    }
}

TEST(CauchyFit, ArcResidualsShrink)
{
    const CurveSpec arc = builtin_curve("arc");
    EXPECT_LT(fit_cauchy_data(arc, 8).report.residual_normal, fit_cauchy_data(arc, 2).report.residual_normal);
}

TEST(CauchyFit, RepeatedPointsAreIllConditioned)
{
    std::vector<CurveSample> samples;
    for (int i = 0; i < 50; ++i) {
        samples.push_back({static_cast<double>(i), {0.2, 0.1}});
    }
    const CurveSpec degenerate = CurveSpec::from_samples(samples, 1, false);
    EXPECT_THROW(fit_cauchy_data(degenerate, 4), IllConditionedFit);
}

TEST(CauchyFit, RejectsBadDegree)
{
    EXPECT_THROW(fit_cauchy_data(builtin_curve("segment"), 0), InvalidParameter);
}

TEST(Curves, BuiltinsStayInsideTheDisk)
{
    for (const char* name : {"segment", "arc", "circle-arc", "circle"}) {
        const CurveSpec c = builtin_curve(name);
        EXPECT_NO_THROW(c.validate()) << name;
        EXPECT_LT(c.max_radius(), 0.99);
    }
    EXPECT_THROW(builtin_curve("spiral"), InvalidParameter);
}

TEST(Curves, NormalIsUnitAndOrthogonal)
{
    const CurveSpec c = builtin_curve("circle-arc");
    for (const double t : {0.0, 0.3, 1.0}) {
        const Point2 n = c.normal(t);
        EXPECT_NEAR(norm(n), 1.0, 1e-12);
        EXPECT_NEAR(dot(n, c.tangent(t)), 0.0, 1e-12);
        // outward for the arc about the origin
        EXPECT_GT(dot(n, c.point(t)), 0.0);
    }
    EXPECT_NEAR(builtin_curve("segment").normal(0.5).y, 1.0, 1e-15);
}

TEST(Curves, FileGrammar)
{
    std::istringstream in("# a chord\norientation -1\ncollocation 40\n0 -0.5 0.1\n1 0.5 0.1  # end\n");
    const CurveSpec c = read_curve(in);
    EXPECT_EQ(c.orientation(), -1);
    EXPECT_EQ(c.collocation_count(), 40);
    EXPECT_FALSE(c.closed());
    EXPECT_NEAR(c.point(0.5).x, 0.0, 1e-15);
    EXPECT_NEAR(c.normal(0.5).y, -1.0, 1e-12);
}

TEST(Curves, ParseErrorsCarryLineNumbers)
{
    const auto line_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            (void)read_curve(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    EXPECT_EQ(line_of("0 0 0\n1 0.1 0\nnot a row\n"), 3);
    EXPECT_EQ(line_of("0 0 0\n0 0.1 0\n"), 2);
    EXPECT_EQ(line_of("orientation 2\n"), 1);
    EXPECT_EQ(line_of("0 0 0 7\n"), 1);
    EXPECT_EQ(line_of("closed\n0 0 0\n1 0.1 0\n"), 3);
    EXPECT_EQ(line_of("0 0 0\n"), 1);
}

TEST(Curves, UnknownFileIsReported)
{
    EXPECT_THROW(resolve_curve("/nonexistent/curve.txt"), InvalidParameter);
}
