#include "mgraph/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "mgraph/error.hpp"

namespace mgraph {

namespace {

// Cell edges: 0 bottom, 1 right, 2 top, 3 left. Corners: 0 (i,j), 1 (i+1,j),
// 2 (i+1,j+1), 3 (i,j+1). Index bit k is set when corner k is positive.
struct CaseSegments {
    int count;
    std::array<std::array<int, 2>, 2> edges;
};

constexpr std::array<CaseSegments, 16> kCases{{
    {0, {}},
    {1, {{{3, 0}}}},
    {1, {{{0, 1}}}},
    {1, {{{3, 1}}}},
    {1, {{{1, 2}}}},
    {2, {{{3, 0}, {1, 2}}}},  // saddle, centre negative
    {1, {{{0, 2}}}},
    {1, {{{2, 3}}}},
    {1, {{{2, 3}}}},
    {1, {{{0, 2}}}},
    {2, {{{0, 1}, {2, 3}}}},  // saddle, centre negative
    {1, {{{1, 2}}}},
    {1, {{{3, 1}}}},
    {1, {{{0, 1}}}},
    {1, {{{3, 0}}}},
    {0, {}},
}};

// Saddle pairings when the cell centre is positive.
constexpr CaseSegments kSaddle5Positive{2, {{{0, 1}, {2, 3}}}};
constexpr CaseSegments kSaddle10Positive{2, {{{3, 0}, {1, 2}}}};

double segment_distance(Point2 p, Point2 a, Point2 b)
{
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) {
        return norm(p - a);
    }
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

template <class F>
void for_each_segment(const Polyline& line, F&& f)
{
    const auto& v = line.vertices;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        f(v[k], v[k + 1]);
    }
    if (line.closed && v.size() > 2) {
        f(v.back(), v.front());
    }
}

// Splits a chain wherever keep(index) is false; dropped vertices disappear.
template <class Keep>
void split_chain(const Polyline& chain, Keep&& keep, std::vector<Polyline>& out)
{
    const auto& v = chain.vertices;
    const std::size_t n = v.size();
    std::size_t first_dropped = n;
    for (std::size_t k = 0; k < n; ++k) {
        if (!keep(k)) {
            first_dropped = k;
            break;
        }
    }
    if (first_dropped == n) {
        out.push_back(chain);
        return;
    }
    // For closed chains, start walking right after a dropped vertex so that the
    // wrap-around piece stays in one polyline.
    const std::size_t start = chain.closed ? first_dropped : 0;
    Polyline current;
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t k = (start + step) % n;
        if (keep(k)) {
            current.vertices.push_back(v[k]);
        } else if (!current.vertices.empty()) {
            if (current.vertices.size() >= 2) {
                out.push_back(std::move(current));
            }
            current = Polyline{};
        }
    }
    if (current.vertices.size() >= 2) {
        out.push_back(std::move(current));
    }
}

// Distance to the reference, or infinity when the nearest reference point is an
// open end that p lies beyond.
double tube_distance(const LevelSet& reference, Point2 p)
{
    double best = std::numeric_limits<double>::infinity();
    bool beyond_end = false;
    const auto consider = [&](double d, bool overshoot) {
        if (d < best) {
            best = d;
            beyond_end = overshoot;
        }
    };
    for (const auto& line : reference.polylines) {
        const auto& v = line.vertices;
        if (v.size() == 1) {
            consider(norm(p - v.front()), true);
            continue;
        }
        const std::size_t last = v.size() - 2;
        for (std::size_t k = 0; k + 1 < v.size(); ++k) {
            const Point2 ab = v[k + 1] - v[k];
            const double len2 = dot(ab, ab);
            const double t = len2 > 0.0 ? dot(p - v[k], ab) / len2 : 0.0;
            const bool overshoot = !line.closed && ((k == 0 && t < 0.0) || (k == last && t > 1.0));
            consider(segment_distance(p, v[k], v[k + 1]), overshoot);
        }
        if (line.closed && v.size() > 2) {
            consider(segment_distance(p, v.back(), v.front()), false);
        }
    }
    return beyond_end ? std::numeric_limits<double>::infinity() : best;
}

}  // namespace

double polyline_length(const Polyline& line)
{
    double length = 0.0;
    for_each_segment(line, [&](Point2 a, Point2 b) { length += norm(b - a); });
    return length;
}

double polyline_length(const LevelSet& ls)
{
    double length = 0.0;
    for (const auto& line : ls.polylines) {
        length += polyline_length(line);
    }
    return length;
}

LevelSet make_level_set(std::vector<Polyline> polylines)
{
    LevelSet ls;
    ls.polylines = std::move(polylines);
    ls.total_length = polyline_length(ls);
    return ls;
}

LevelSet extract_zero_set(const ScalarField& u, const ExtractOptions& options)
{
    const DiskGrid& grid = u.grid();
    const int n = grid.half_width();
    const int width = grid.lattice_width();
    const double h = grid.spacing();

    const double scale = sup_norm(u);
    std::vector<double> values(u.values().begin(), u.values().end());
    LevelSet ls;
    for (double& v : values) {
        if (v == 0.0) {
            v = 1e-14 * scale;
            ++ls.perturbed_corners;
        }
    }

    std::vector<int> vertex_of_edge(static_cast<std::size_t>(width) * width * 2, -1);
    std::vector<Point2> vertices;
    std::vector<std::array<int, 2>> segments;

    const auto edge_vertex = [&](int i, int j, bool vertical, std::size_t a, std::size_t b) {
        const std::size_t key = (static_cast<std::size_t>(j + n) * width + (i + n)) * 2 + (vertical ? 1 : 0);
        if (vertex_of_edge[key] < 0) {
            const double va = values[a];
            const double vb = values[b];
            const double t = va / (va - vb);
            const Point2 pa = grid.position(a);
            const Point2 pb = grid.position(b);
            vertex_of_edge[key] = static_cast<int>(vertices.size());
            vertices.push_back(pa + t * (pb - pa));
        }
        return vertex_of_edge[key];
    };

    for (int j = -n; j < n; ++j) {
        for (int i = -n; i < n; ++i) {
            const auto c0 = grid.node_at(i, j);
            const auto c1 = grid.node_at(i + 1, j);
            const auto c2 = grid.node_at(i + 1, j + 1);
            const auto c3 = grid.node_at(i, j + 1);
            if (!c0 || !c1 || !c2 || !c3) {
                continue;
            }
            const std::array<std::size_t, 4> corner{*c0, *c1, *c2, *c3};
            if (u[corner[0]] == 0.0 && u[corner[1]] == 0.0 && u[corner[2]] == 0.0 && u[corner[3]] == 0.0) {
                const Point2 p = grid.position(corner[0]);
                throw DegenerateLevelSet("field vanishes on the whole cell at (" + std::to_string(p.x) + ", " +
                                         std::to_string(p.y) + "); shift the grid or the level");
            }
            int index = 0;
            double centre = 0.0;
            for (int k = 0; k < 4; ++k) {
                centre += 0.25 * values[corner[k]];
                if (values[corner[k]] > 0.0) {
                    index |= 1 << k;
                }
            }
            CaseSegments cs = kCases[index];
            if (index == 5 && centre > 0.0) {
                cs = kSaddle5Positive;
            } else if (index == 10 && centre > 0.0) {
                cs = kSaddle10Positive;
            }
            const auto vertex_on = [&](int edge) {
                switch (edge) {
                case 0: return edge_vertex(i, j, false, corner[0], corner[1]);
                case 1: return edge_vertex(i + 1, j, true, corner[1], corner[2]);
                case 2: return edge_vertex(i, j + 1, false, corner[3], corner[2]);
                default: return edge_vertex(i, j, true, corner[0], corner[3]);
                }
            };
            for (int s = 0; s < cs.count; ++s) {
                segments.push_back({vertex_on(cs.edges[s][0]), vertex_on(cs.edges[s][1])});
            }
        }
    }

    // Each crossing is shared by at most two cells, so every vertex has degree 1 or 2.
    std::vector<std::array<int, 2>> incident(vertices.size(), {-1, -1});
    std::vector<int> degree(vertices.size(), 0);
    for (std::size_t s = 0; s < segments.size(); ++s) {
        for (const int v : segments[s]) {
            if (degree[v] < 2) {
                incident[v][degree[v]] = static_cast<int>(s);
            }
            ++degree[v];
        }
    }

    std::vector<bool> used(segments.size(), false);
    std::vector<Polyline> chains;
    const auto walk = [&](int start, bool closed) {
        Polyline line;
        line.closed = closed;
        line.vertices.push_back(vertices[start]);
        int current = start;
        for (;;) {
            int next_segment = -1;
            for (int k = 0; k < std::min(degree[current], 2); ++k) {
                const int s = incident[current][k];
                if (!used[s]) {
                    next_segment = s;
                    break;
                }
            }
            if (next_segment < 0) {
                break;
            }
            used[next_segment] = true;
            const auto& seg = segments[next_segment];
            current = seg[0] == current ? seg[1] : seg[0];
            if (closed && current == start) {
                break;
            }
            line.vertices.push_back(vertices[current]);
        }
        chains.push_back(std::move(line));
    };
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (degree[v] == 1 && !used[incident[v][0]]) {
            walk(static_cast<int>(v), false);
        }
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (degree[v] >= 2 && (!used[incident[v][0]] || !used[incident[v][1]])) {
            walk(static_cast<int>(v), true);
        }
    }

    const double clip = options.clip_radius;
    std::vector<Polyline> kept;
    for (const auto& chain : chains) {
        split_chain(chain, [&](std::size_t k) { return norm(chain.vertices[k]) <= clip; }, kept);
    }
    ls.polylines = std::move(kept);
    ls.total_length = polyline_length(ls);
    ls.min_gradient = ls.polylines.empty() ? 0.0 : transversality_margin(u, ls, 0.5 * h);
    return ls;
}

std::vector<Point2> densify(const LevelSet& ls, double step)
{
    if (!(step > 0.0)) {
        throw InvalidParameter("densification step must be positive");
    }
    std::vector<Point2> out;
    for (const auto& line : ls.polylines) {
        if (line.vertices.size() == 1) {
            out.push_back(line.vertices.front());
            continue;
        }
        for_each_segment(line, [&](Point2 a, Point2 b) {
            const int pieces = std::max(1, static_cast<int>(std::ceil(norm(b - a) / step)));
            for (int k = 0; k < pieces; ++k) {
                out.push_back(a + (static_cast<double>(k) / pieces) * (b - a));
            }
        });
        if (!line.closed && !line.vertices.empty()) {
            out.push_back(line.vertices.back());
        }
    }
    return out;
}

double distance_to(const LevelSet& ls, Point2 p)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : ls.polylines) {
        if (line.vertices.size() == 1) {
            best = std::min(best, norm(p - line.vertices.front()));
            continue;
        }
        for_each_segment(line, [&](Point2 a, Point2 b) { best = std::min(best, segment_distance(p, a, b)); });
    }
    return best;
}

double hausdorff_distance(const LevelSet& a, const LevelSet& b, double step)
{
    const bool a_empty = a.polylines.empty();
    const bool b_empty = b.polylines.empty();
    if (a_empty && b_empty) {
        return 0.0;
    }
    if (a_empty || b_empty) {
        return std::numeric_limits<double>::infinity();
    }
    double d = 0.0;
    for (const Point2 p : densify(a, step)) {
        d = std::max(d, distance_to(b, p));
    }
    for (const Point2 p : densify(b, step)) {
        d = std::max(d, distance_to(a, p));
    }
    return d;
}

LevelSet restrict_to_neighborhood(const LevelSet& ls, const LevelSet& reference, double radius)
{
    const auto inside = [&](Point2 p) { return tube_distance(reference, p) <= radius; };
    // Where the segment from an inside point a to an outside point b leaves the tube.
    const auto exit_point = [&](Point2 a, Point2 b) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            (inside(a + mid * (b - a)) ? lo : hi) = mid;
        }
        return a + lo * (b - a);
    };

    std::vector<Polyline> out;
    for (const auto& line : ls.polylines) {
        const auto& v = line.vertices;
        const std::size_t n = v.size();
        std::vector<bool> keep(n);
        for (std::size_t k = 0; k < n; ++k) {
            keep[k] = inside(v[k]);
        }
        const auto first_out = std::find(keep.begin(), keep.end(), false);
        if (first_out == keep.end()) {
            out.push_back(line);
            continue;
        }
        // Closed chains are walked once around, starting and ending at an outside vertex.
        const std::size_t start = line.closed ? static_cast<std::size_t>(first_out - keep.begin()) : 0;
        const std::size_t steps = line.closed ? n : n - 1;
        Polyline current;
        if (keep[start]) {
            current.vertices.push_back(v[start]);
        }
        for (std::size_t step = 0; step < steps; ++step) {
            const std::size_t a = (start + step) % n;
            const std::size_t b = (start + step + 1) % n;
            if (keep[a] && keep[b]) {
                current.vertices.push_back(v[b]);
            } else if (keep[a]) {
                current.vertices.push_back(exit_point(v[a], v[b]));
                if (current.vertices.size() >= 2) {
                    out.push_back(std::move(current));
                }
                current = Polyline{};
            } else if (keep[b]) {
                current.vertices.push_back(exit_point(v[b], v[a]));
                current.vertices.push_back(v[b]);
            }
        }
        if (current.vertices.size() >= 2) {
            out.push_back(std::move(current));
        }
    }
    return make_level_set(std::move(out));
}

Point2 interpolate_gradient(const VectorField& grad, Point2 p)
{
    const DiskGrid& grid = *grad.grid;
    const double h = grid.spacing();
    const int i = static_cast<int>(std::floor(p.x / h));
    const int j = static_cast<int>(std::floor(p.y / h));
    const double s = p.x / h - i;
    const double t = p.y / h - j;
    const std::array<std::array<int, 2>, 4> offsets{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    const std::array<double, 4> weights{(1 - s) * (1 - t), s * (1 - t), s * t, (1 - s) * t};
    Point2 g{0.0, 0.0};
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
        if (const auto node = grid.node_at(i + offsets[k][0], j + offsets[k][1])) {
            g = g + weights[k] * Point2{grad.values[*node][0], grad.values[*node][1]};
            total += weights[k];
        }
    }
    if (total > 0.0) {
        return (1.0 / total) * g;
    }
    // Outside every active cell: nearest active node within two cells.
    double best = std::numeric_limits<double>::infinity();
    Point2 nearest{0.0, 0.0};
    for (int dj = -2; dj <= 3; ++dj) {
        for (int di = -2; di <= 3; ++di) {
            if (const auto node = grid.node_at(i + di, j + dj)) {
                const double d = norm(grid.position(*node) - p);
                if (d < best) {
                    best = d;
                    nearest = {grad.values[*node][0], grad.values[*node][1]};
                }
            }
        }
    }
    return nearest;
}

double transversality_margin(const ScalarField& u, const LevelSet& ls, double step)
{
    if (step <= 0.0) {
        step = 0.5 * u.grid().spacing();
    }
    const VectorField grad = gradient(u);
    double margin = std::numeric_limits<double>::infinity();
    for (const Point2 p : densify(ls, step)) {
        margin = std::min(margin, norm(interpolate_gradient(grad, p)));
    }
    return std::isfinite(margin) ? margin : 0.0;
}

double rectangle_disk_area(double x0, double x1, double y0, double y1)
{
    const double a = std::max(x0, -1.0);
    const double b = std::min(x1, 1.0);
    if (!(b > a) || !(y1 > y0)) {
        return 0.0;
    }
    const auto half = [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); };
    const auto primitive = [&](double x) { return 0.5 * (x * half(x) + std::asin(std::clamp(x, -1.0, 1.0))); };

    std::vector<double> breaks{a, b};
    for (const double y : {y0, y1}) {
        if (std::abs(y) <= 1.0) {
            for (const double x : {-half(y), half(y)}) {
                if (x > a && x < b) {
                    breaks.push_back(x);
                }
            }
        }
    }
    std::sort(breaks.begin(), breaks.end());

    double area = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double p = breaks[k];
        const double q = breaks[k + 1];
        if (!(q > p)) {
            continue;
        }
        const double mid = 0.5 * (p + q);
        const double s = half(mid);
        const bool upper_is_circle = s < y1;
        const bool lower_is_circle = -s > y0;
        const double upper_mid = upper_is_circle ? s : y1;
        const double lower_mid = lower_is_circle ? -s : y0;
        if (!(upper_mid > lower_mid)) {
            continue;
        }
        const double circle = primitive(q) - primitive(p);
        const double upper = upper_is_circle ? circle : y1 * (q - p);
        const double lower = lower_is_circle ? -circle : y0 * (q - p);
        area += upper - lower;
    }
    return area;
}

double graph_area(const ScalarField& u)
{
    const DiskGrid& grid = u.grid();
    const int n = grid.half_width();
    const double h = grid.spacing();
    const VectorField grad = gradient(u);

    double area = 0.0;
    for (int j = -n; j < n; ++j) {
        for (int i = -n; i < n; ++i) {
            const double weight = rectangle_disk_area(i * h, (i + 1) * h, j * h, (j + 1) * h);
            if (weight <= 0.0) {
                continue;
            }
            const Point2 centre{(i + 0.5) * h, (j + 0.5) * h};
            const Point2 g = interpolate_gradient(grad, centre);
            area += weight * std::sqrt(1.0 + dot(g, g));
        }
    }
    return area;
}

}  // namespace mgraph
