#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "mgraph/grid.hpp"

namespace mgraph {

/// One row of a sampled curve file.
struct CurveSample {
    double t;
    Point2 p;
};

/// A smooth curve in the open unit disk carrying a chosen unit normal.
///
/// The normal is the tangent rotated by +90 degrees, multiplied by the
/// orientation sign (+1 or -1).
class CurveSpec {
public:
    using Map = std::function<Point2(double)>;

    static constexpr int kDefaultCollocation = 400;

    CurveSpec(Map point, Map tangent, double t_begin, double t_end, int orientation, bool closed,
              int collocation_count = kDefaultCollocation);

    /// Piecewise-linear curve through the samples; tangents by central differences.
    /// For a closed curve the last sample must repeat the first point.
    static CurveSpec from_samples(std::vector<CurveSample> samples, int orientation, bool closed,
                                  int collocation_count = kDefaultCollocation);

    [[nodiscard]] Point2 point(double t) const { return point_(t); }
    [[nodiscard]] Point2 tangent(double t) const { return tangent_(t); }
    /// Unit normal; the zero vector where the tangent vanishes.
    [[nodiscard]] Point2 normal(double t) const;

    [[nodiscard]] double t_begin() const noexcept { return t_begin_; }
    [[nodiscard]] double t_end() const noexcept { return t_end_; }
    [[nodiscard]] int orientation() const noexcept { return orientation_; }
    [[nodiscard]] bool closed() const noexcept { return closed_; }
    [[nodiscard]] int collocation_count() const noexcept { return collocation_count_; }

    [[nodiscard]] CurveSpec with_collocation_count(int count) const;

    /// Uniform in t; a closed curve does not repeat its starting parameter.
    [[nodiscard]] std::vector<double> collocation_parameters() const;

    /// `count` points uniform in t, endpoints included (closed curves repeat the first point).
    [[nodiscard]] std::vector<Point2> polyline(int count) const;

    /// Largest |c(t)| over the collocation points.
    [[nodiscard]] double max_radius() const;
    /// Smallest distance between two collocation points that are not parameter
    /// neighbours; a cheap injectivity indicator.
    [[nodiscard]] double min_separation() const;

    /// Throws InvalidParameter unless every collocation point satisfies |c(t)| <= 1 - margin.
    void validate(double margin = 0.02) const;

private:
    Map point_;
    Map tangent_;
    double t_begin_;
    double t_end_;
    int orientation_;
    bool closed_;
    int collocation_count_;
};

/// Built-in curves, all with unit normal derivative target:
///   segment     {y = 0, -0.5 <= x <= 0.5}, normal (0, 1)
///   arc         radius 0.8 about (0, -0.6), angles [pi/2 - 0.6, pi/2 + 0.6], normal away from the centre
///   circle-arc  radius 0.5 about the origin, angles [pi/6, 5pi/6] (a 240 degree gap),
///               outward normal (alias: circle-arc-with-gap)
///   circle      full circle of radius 0.5, outward normal
/// Throws InvalidParameter for an unknown name.
CurveSpec builtin_curve(std::string_view name);

/// Curve file grammar (one item per line, '#' starts a comment):
///   orientation <+1|-1>      optional, default +1
///   closed                   optional; the last sample must repeat the first point
///   collocation <count>      optional, default 400
///   <t> <x> <y>              at least two samples, t strictly increasing
/// Throws ParseError carrying the line number.
CurveSpec read_curve(std::istream& in);
CurveSpec load_curve_file(const std::filesystem::path& path);

/// A built-in name or, failing that, a file path.
CurveSpec resolve_curve(std::string_view name_or_path);

}  // namespace mgraph
