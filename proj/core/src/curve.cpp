#include "mgraph/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "mgraph/error.hpp"

namespace mgraph {

CurveSpec::CurveSpec(Map point, Map tangent, double t_begin, double t_end, int orientation, bool closed,
                     int collocation_count)
    : point_(std::move(point)),
      tangent_(std::move(tangent)),
      t_begin_(t_begin),
      t_end_(t_end),
      orientation_(orientation),
      closed_(closed),
      collocation_count_(collocation_count)
{
    if (orientation != 1 && orientation != -1) {
        throw InvalidParameter("curve orientation must be +1 or -1");
    }
    if (!(t_end > t_begin)) {
        throw InvalidParameter("curve parameter domain is empty");
    }
    if (collocation_count < 2) {
        throw InvalidParameter("curve needs at least two collocation points");
    }
}

CurveSpec CurveSpec::from_samples(std::vector<CurveSample> samples, int orientation, bool closed,
                                  int collocation_count)
{
    if (samples.size() < 2) {
        throw InvalidParameter("sampled curve needs at least two samples");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].t > samples[i - 1].t)) {
            throw InvalidParameter("curve samples must have strictly increasing t");
        }
    }
    if (closed && norm(samples.front().p - samples.back().p) > 1e-12) {
        throw InvalidParameter("closed curve must repeat its first point as the last sample");
    }

    // Central-difference tangents at the samples.
    const std::size_t n = samples.size();
    std::vector<Point2> tangents(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i == 0 ? 0 : i - 1;
        std::size_t hi = i + 1 == n ? n - 1 : i + 1;
        double dt = samples[hi].t - samples[lo].t;
        Point2 dp = samples[hi].p - samples[lo].p;
        if (closed && n > 2 && (i == 0 || i + 1 == n)) {
            const double period = samples.back().t - samples.front().t;
            dp = samples[1].p - samples[n - 2].p;
            dt = (samples[1].t - samples[0].t) + (period - (samples[n - 2].t - samples[0].t));
        }
        tangents[i] = (1.0 / dt) * dp;
    }

    auto shared = std::make_shared<const std::vector<CurveSample>>(std::move(samples));
    auto shared_tangents = std::make_shared<const std::vector<Point2>>(std::move(tangents));
    const auto locate = [shared](double t) {
        const auto& s = *shared;
        t = std::clamp(t, s.front().t, s.back().t);
        auto it = std::upper_bound(s.begin(), s.end(), t, [](double v, const CurveSample& c) { return v < c.t; });
        std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - s.begin()), s.size() - 1);
        hi = std::max<std::size_t>(hi, 1);
        const std::size_t lo = hi - 1;
        const double w = (t - s[lo].t) / (s[hi].t - s[lo].t);
        return std::pair{lo, w};
    };
    const double t0 = shared->front().t;
    const double t1 = shared->back().t;
    Map point = [shared, locate](double t) {
        const auto [lo, w] = locate(t);
        const auto& s = *shared;
        return (1.0 - w) * s[lo].p + w * s[lo + 1].p;
    };
    Map tangent = [shared_tangents, locate](double t) {
        const auto [lo, w] = locate(t);
        const auto& g = *shared_tangents;
        return (1.0 - w) * g[lo] + w * g[lo + 1];
    };
    return CurveSpec(std::move(point), std::move(tangent), t0, t1, orientation, closed, collocation_count);
}

Point2 CurveSpec::normal(double t) const
{
    const Point2 d = tangent(t);
    const double len = norm(d);
    if (len == 0.0) {
        return {0.0, 0.0};
    }
    return (orientation_ / len) * Point2{-d.y, d.x};
}

CurveSpec CurveSpec::with_collocation_count(int count) const
{
    return CurveSpec(point_, tangent_, t_begin_, t_end_, orientation_, closed_, count);
}

std::vector<double> CurveSpec::collocation_parameters() const
{
    std::vector<double> t(static_cast<std::size_t>(collocation_count_));
    const double span = t_end_ - t_begin_;
    const double denom = closed_ ? collocation_count_ : collocation_count_ - 1;
    for (int i = 0; i < collocation_count_; ++i) {
        t[i] = t_begin_ + span * (i / denom);
    }
    return t;
}

std::vector<Point2> CurveSpec::polyline(int count) const
{
    std::vector<Point2> out(static_cast<std::size_t>(std::max(count, 2)));
    const double denom = static_cast<double>(out.size() - 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = point(t_begin_ + (t_end_ - t_begin_) * (i / denom));
    }
    return out;
}

double CurveSpec::max_radius() const
{
    double r = 0.0;
    for (const double t : collocation_parameters()) {
        r = std::max(r, norm(point(t)));
    }
    return r;
}

double CurveSpec::min_separation() const
{
    const auto ts = collocation_parameters();
    std::vector<Point2> pts;
    pts.reserve(ts.size());
    for (const double t : ts) {
        pts.push_back(point(t));
    }
    const std::size_t n = pts.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (closed_ && i == 0 && j + 1 == n) {
                continue;
            }
            best = std::min(best, norm(pts[i] - pts[j]));
        }
    }
    return best;
}

void CurveSpec::validate(double margin) const
{
    for (const double t : collocation_parameters()) {
        const Point2 p = point(t);
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw InvalidParameter("curve has a non-finite point");
        }
        if (norm(p) > 1.0 - margin) {
            throw InvalidParameter("curve leaves the disk of radius " + std::to_string(1.0 - margin));
        }
    }
}

namespace {

CurveSpec circle_arc(Point2 centre, double radius, double a0, double a1, bool closed)
{
    CurveSpec::Map point = [=](double t) {
        const double a = a0 + (a1 - a0) * t;
        return Point2{centre.x + radius * std::cos(a), centre.y + radius * std::sin(a)};
    };
    CurveSpec::Map tangent = [=](double t) {
        const double a = a0 + (a1 - a0) * t;
        const double s = radius * (a1 - a0);
        return Point2{-s * std::sin(a), s * std::cos(a)};
    };
    // Counter-clockwise traversal: the +90 degree normal points inward, so flip it.
    return CurveSpec(std::move(point), std::move(tangent), 0.0, 1.0, -1, closed);
}

}  // namespace

CurveSpec builtin_curve(std::string_view name)
{
    using std::numbers::pi;
    if (name == "segment") {
        return CurveSpec([](double t) { return Point2{-0.5 + t, 0.0}; }, [](double) { return Point2{1.0, 0.0}; },
                         0.0, 1.0, 1, false);
    }
    if (name == "arc") {
        return circle_arc({0.0, -0.6}, 0.8, pi / 2.0 - 0.6, pi / 2.0 + 0.6, false);
    }
    if (name == "circle-arc" || name == "circle-arc-with-gap") {
        return circle_arc({0.0, 0.0}, 0.5, pi / 6.0, 5.0 * pi / 6.0, false);
    }
    if (name == "circle") {
        return circle_arc({0.0, 0.0}, 0.5, 0.0, 2.0 * pi, true);
    }
    throw InvalidParameter("unknown built-in curve '" + std::string(name) + "'");
}

CurveSpec read_curve(std::istream& in)
{
    std::vector<CurveSample> samples;
    int orientation = 1;
    bool closed = false;
    int collocation = CurveSpec::kDefaultCollocation;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string head;
        if (!(fields >> head)) {
            continue;
        }
        std::string rest;
        if (head == "orientation") {
            if (!(fields >> orientation) || (orientation != 1 && orientation != -1) || (fields >> rest)) {
                throw ParseError("orientation must be +1 or -1", line_no);
            }
            continue;
        }
        if (head == "closed") {
            if (fields >> rest) {
                throw ParseError("'closed' takes no arguments", line_no);
            }
            closed = true;
            continue;
        }
        if (head == "collocation") {
            if (!(fields >> collocation) || collocation < 2 || (fields >> rest)) {
                throw ParseError("collocation must be an integer >= 2", line_no);
            }
            continue;
        }
        CurveSample s{};
        std::istringstream row(line);
        if (!(row >> s.t >> s.p.x >> s.p.y) || (row >> rest)) {
            throw ParseError("expected \"t x y\"", line_no);
        }
        if (!std::isfinite(s.t) || !std::isfinite(s.p.x) || !std::isfinite(s.p.y)) {
            throw ParseError("non-finite number", line_no);
        }
        if (!samples.empty() && !(s.t > samples.back().t)) {
            throw ParseError("t must be strictly increasing", line_no);
        }
        samples.push_back(s);
    }
    if (samples.size() < 2) {
        throw ParseError("a curve needs at least two samples", line_no);
    }
    if (closed && norm(samples.front().p - samples.back().p) > 1e-12) {
        throw ParseError("closed curve must end on its first point", line_no);
    }
    return CurveSpec::from_samples(std::move(samples), orientation, closed, collocation);
}

CurveSpec load_curve_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidParameter("cannot open curve file " + path.string());
    }
    return read_curve(in);
}

CurveSpec resolve_curve(std::string_view name_or_path)
{
    for (const std::string_view known : {"segment", "arc", "circle-arc", "circle-arc-with-gap", "circle"}) {
        if (name_or_path == known) {
            return builtin_curve(name_or_path);
        }
    }
    return load_curve_file(std::filesystem::path(std::string(name_or_path)));
}

}  // namespace mgraph
