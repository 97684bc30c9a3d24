#include "mgraph/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mgraph/error.hpp"

namespace mgraph {

double norm(Point2 p) { return std::hypot(p.x, p.y); }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

namespace {

// Lattice points this close to the circle (in |x|^2) are treated as exterior, so
// that every cut fraction stays bounded away from zero.
constexpr double kOnCircleTolerance = 1e-12;
constexpr double kMinFraction = 1e-12;

constexpr std::array<std::array<int, 2>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

bool inside(double x, double y) { return x * x + y * y < 1.0 - kOnCircleTolerance; }

Direction direction_of(int axis, int sign)
{
    if (axis == 0) {
        return sign > 0 ? Direction::East : Direction::West;
    }
    return sign > 0 ? Direction::North : Direction::South;
}

}  // namespace

DiskGrid::DiskGrid(double h) : h_(h)
{
    if (!(h > 0.0 && h <= 0.5)) {
        throw InvalidParameter("grid spacing must lie in (0, 0.5], got " + std::to_string(h));
    }
    n_ = static_cast<int>(std::ceil(1.0 / h - 1e-9));
    const int width = lattice_width();
    slot_to_node_.assign(static_cast<std::size_t>(width) * width, -1);

    for (int j = -n_; j <= n_; ++j) {
        for (int i = -n_; i <= n_; ++i) {
            const double x = i * h_;
            const double y = j * h_;
            if (!inside(x, y)) {
                continue;
            }
            slot_to_node_[lattice_slot(i, j)] = static_cast<std::int64_t>(positions_.size());
            positions_.push_back({x, y});
            lattice_.push_back({i, j});
        }
    }

    arms_.resize(size());
    cut_ids_.resize(size());
    kinds_.resize(size());
    for (std::size_t node = 0; node < size(); ++node) {
        const auto [i, j] = lattice_[node];
        const auto [x, y] = positions_[node];
        bool cut = false;
        for (int d = 0; d < 4; ++d) {
            const auto [di, dj] = kSteps[d];
            if (node_at(i + di, j + dj)) {
                arms_[node][d] = 1.0;
                cut_ids_[node][d] = -1;
                continue;
            }
            cut = true;
            double reach = 0.0;
            Point2 point{};
            if (di != 0) {
                const double half_chord = std::sqrt(std::max(0.0, 1.0 - y * y));
                reach = di > 0 ? half_chord - x : x + half_chord;
                point = {di > 0 ? half_chord : -half_chord, y};
            } else {
                const double half_chord = std::sqrt(std::max(0.0, 1.0 - x * x));
                reach = dj > 0 ? half_chord - y : y + half_chord;
                point = {x, dj > 0 ? half_chord : -half_chord};
            }
            const double fraction = std::clamp(reach / h_, kMinFraction, 1.0);
            arms_[node][d] = fraction;
            cut_ids_[node][d] = static_cast<int>(cuts_.size());
            cuts_.push_back({node, static_cast<Direction>(d), fraction, point});
        }
        kinds_[node] = cut ? NodeKind::BoundaryCut : NodeKind::Interior;
        if (!cut) {
            ++interior_count_;
        }
    }
}

std::int64_t DiskGrid::lattice_slot(int i, int j) const
{
    const std::int64_t width = lattice_width();
    return static_cast<std::int64_t>(j + n_) * width + (i + n_);
}

NodeKind DiskGrid::kind_at(int i, int j) const
{
    if (const auto node = node_at(i, j)) {
        return kinds_[*node];
    }
    return NodeKind::Exterior;
}

std::optional<std::size_t> DiskGrid::node_at(int i, int j) const
{
    if (i < -n_ || i > n_ || j < -n_ || j > n_) {
        return std::nullopt;
    }
    const auto id = slot_to_node_[lattice_slot(i, j)];
    if (id < 0) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(id);
}

std::optional<std::size_t> DiskGrid::neighbor(std::size_t node, Direction d) const
{
    const auto [di, dj] = kSteps[static_cast<int>(d)];
    return node_at(lattice_[node][0] + di, lattice_[node][1] + dj);
}

GridPtr make_disk_grid(double h) { return std::make_shared<const DiskGrid>(h); }

// ---------------------------------------------------------------------------
// ScalarField

namespace {

void require_finite(std::span<const double> values, const char* what)
{
    for (const double v : values) {
        if (!std::isfinite(v)) {
            throw NonFiniteValue(std::string("non-finite value in ") + what);
        }
    }
}

void require_same_grid(const ScalarField& a, const ScalarField& b)
{
    if (a.grid_ptr() != b.grid_ptr() && a.size() != b.size()) {
        throw InvalidParameter("fields live on different grids");
    }
}

}  // namespace

ScalarField::ScalarField(GridPtr grid, std::vector<double> values, std::vector<double> trace)
    : grid_(std::move(grid)), values_(std::move(values)), trace_(std::move(trace))
{
    if (!grid_) {
        throw InvalidParameter("scalar field requires a grid");
    }
    if (values_.size() != grid_->size()) {
        throw InvalidParameter("scalar field size does not match its grid");
    }
    if (!trace_.empty() && trace_.size() != grid_->cut_arms().size()) {
        throw InvalidParameter("boundary trace size does not match the grid's cut arms");
    }
    require_finite(values_, "field values");
    require_finite(trace_, "boundary trace");
}

ScalarField ScalarField::zeros(GridPtr grid)
{
    const std::size_t n = grid->size();
    const std::size_t m = grid->cut_arms().size();
    return ScalarField(std::move(grid), std::vector<double>(n, 0.0), std::vector<double>(m, 0.0));
}

ScalarField ScalarField::sample(GridPtr grid, const std::function<double(Point2)>& f)
{
    std::vector<double> values(grid->size());
    for (std::size_t node = 0; node < values.size(); ++node) {
        values[node] = f(grid->position(node));
    }
    std::vector<double> trace;
    trace.reserve(grid->cut_arms().size());
    for (const auto& cut : grid->cut_arms()) {
        trace.push_back(f(cut.point));
    }
    return ScalarField(std::move(grid), std::move(values), std::move(trace));
}

ScalarField ScalarField::without_trace() const { return ScalarField(grid_, values_); }

ScalarField& ScalarField::operator+=(const ScalarField& other)
{
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += other.values_[i];
    }
    if (has_trace() && other.has_trace()) {
        for (std::size_t i = 0; i < trace_.size(); ++i) {
            trace_[i] += other.trace_[i];
        }
    } else {
        trace_.clear();
    }
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other)
{
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] -= other.values_[i];
    }
    if (has_trace() && other.has_trace()) {
        for (std::size_t i = 0; i < trace_.size(); ++i) {
            trace_[i] -= other.trace_[i];
        }
    } else {
        trace_.clear();
    }
    return *this;
}

ScalarField& ScalarField::operator*=(double s)
{
    if (!std::isfinite(s)) {
        throw NonFiniteValue("non-finite scale factor");
    }
    for (double& v : values_) {
        v *= s;
    }
    for (double& v : trace_) {
        v *= s;
    }
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

// ---------------------------------------------------------------------------
// Finite differences

namespace {

struct StencilPoint {
    double offset;  // units of h
    double value;
};

// Up to three points on one grid line through a node, the node itself first.
struct AxisStencil {
    std::array<StencilPoint, 3> points{};
    int count{0};
};

struct SideCandidates {
    std::array<StencilPoint, 2> points{};
    int count{0};
    bool merged{false};  // the only point is a cut point closer than kMergeFraction
};

enum class ArmPolicy { ShortleyWeller, Merged };

SideCandidates side_candidates(const DiskGrid& grid, std::span<const double> values,
                               std::span<const double> trace, std::size_t node, int axis, int sign)
{
    SideCandidates side;
    const Direction d = direction_of(axis, sign);
    if (const auto nb = grid.neighbor(node, d)) {
        side.points[side.count++] = {static_cast<double>(sign), values[*nb]};
        if (const auto nb2 = grid.neighbor(*nb, d)) {
            side.points[side.count++] = {2.0 * sign, values[*nb2]};
        } else if (!trace.empty()) {
            const int cut = grid.cut_index(*nb, d);
            const double fraction = grid.arm(*nb, d);
            if (fraction >= DiskGrid::kMergeFraction) {
                side.points[side.count++] = {sign * (1.0 + fraction), trace[cut]};
            }
        }
        return side;
    }
    if (!trace.empty()) {
        const int cut = grid.cut_index(node, d);
        const double fraction = grid.arm(node, d);
        side.points[side.count++] = {sign * fraction, trace[cut]};
        side.merged = fraction < DiskGrid::kMergeFraction;
    }
    return side;
}

AxisStencil axis_stencil(const DiskGrid& grid, std::span<const double> values, std::span<const double> trace,
                         std::size_t node, int axis, ArmPolicy policy)
{
    const SideCandidates plus = side_candidates(grid, values, trace, node, axis, +1);
    const SideCandidates minus = side_candidates(grid, values, trace, node, axis, -1);

    AxisStencil s;
    s.points[s.count++] = {0.0, values[node]};

    const auto usable = [policy](const SideCandidates& c) {
        return c.count > 0 && (policy == ArmPolicy::ShortleyWeller || !c.merged);
    };
    if (usable(plus) && usable(minus)) {
        s.points[s.count++] = minus.points[0];
        s.points[s.count++] = plus.points[0];
        return s;
    }
    for (const SideCandidates* c : {&plus, &minus}) {
        if (usable(*c) && c->count == 2) {
            s.points[s.count++] = c->points[0];
            s.points[s.count++] = c->points[1];
            return s;
        }
    }
    // Thin rows: take whatever exists, merged cut points included.
    if (plus.count > 0 && minus.count > 0) {
        s.points[s.count++] = minus.points[0];
        s.points[s.count++] = plus.points[0];
        return s;
    }
    for (const SideCandidates* c : {&plus, &minus}) {
        for (int k = 0; k < c->count && s.count < 3; ++k) {
            s.points[s.count++] = c->points[k];
        }
    }
    return s;
}

// Derivatives at offset 0 of the interpolant through the stencil points.
double first_derivative(const AxisStencil& s, double h)
{
    if (s.count == 3) {
        double sum = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double zk = s.points[k].offset;
            const double z1 = s.points[(k + 1) % 3].offset;
            const double z2 = s.points[(k + 2) % 3].offset;
            sum += s.points[k].value * (-z1 - z2) / ((zk - z1) * (zk - z2));
        }
        return sum / h;
    }
    if (s.count == 2) {
        return (s.points[1].value - s.points[0].value) / (s.points[1].offset * h);
    }
    return 0.0;
}

double second_derivative(const AxisStencil& s, double h)
{
    if (s.count < 3) {
        return 0.0;
    }
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double zk = s.points[k].offset;
        const double z1 = s.points[(k + 1) % 3].offset;
        const double z2 = s.points[(k + 2) % 3].offset;
        sum += s.points[k].value * 2.0 / ((zk - z1) * (zk - z2));
    }
    return sum / (h * h);
}

std::vector<std::array<double, 2>> gradient_values(const DiskGrid& grid, std::span<const double> values,
                                                   std::span<const double> trace)
{
    std::vector<std::array<double, 2>> g(grid.size());
    const double h = grid.spacing();
    for (std::size_t node = 0; node < grid.size(); ++node) {
        for (int axis = 0; axis < 2; ++axis) {
            g[node][axis] = first_derivative(axis_stencil(grid, values, trace, node, axis, ArmPolicy::Merged), h);
        }
    }
    return g;
}

// Second-order mixed partial from lattice values alone, or nullopt when the
// neighbourhood is too thin. Tried in order: the full cross; one pair of opposite
// quadrant cells (their first-order errors cancel); a one-sided three-row difference
// of centred derivatives along either axis.
std::optional<double> mixed_partial(const DiskGrid& grid, std::span<const double> values, std::size_t node)
{
    const double h = grid.spacing();
    const auto [i, j] = grid.lattice_index(node);
    const auto at = [&](int di, int dj) -> std::optional<double> {
        if (const auto nb = grid.node_at(i + di, j + dj)) {
            return values[*nb];
        }
        return std::nullopt;
    };
    const auto ne = at(1, 1), nw = at(-1, 1), se = at(1, -1), sw = at(-1, -1);
    if (ne && nw && se && sw) {
        return (*ne - *nw - *se + *sw) / (4.0 * h * h);
    }
    const auto e = at(1, 0), w = at(-1, 0), n = at(0, 1), s = at(0, -1);
    const double c = values[node];
    if (e && w && n && s) {
        // Quadrant cell towards (sx, sy): (f_00 + f_sxsy - f_sx0 - f_0sy) / (sx sy h^2).
        if (ne && sw) {
            return 0.5 * ((c + *ne - *e - *n) + (c + *sw - *w - *s)) / (h * h);
        }
        if (nw && se) {
            return -0.5 * ((c + *nw - *w - *n) + (c + *se - *e - *s)) / (h * h);
        }
    }
    for (const int axis : {0, 1}) {
        for (const int sign : {+1, -1}) {
            // Centred derivative across `axis` on three lines stepping away along the other axis.
            std::array<double, 3> d{};
            bool ok = true;
            for (int k = 0; k < 3 && ok; ++k) {
                const int step = sign * k;
                const auto plus = axis == 0 ? at(1, step) : at(step, 1);
                const auto minus = axis == 0 ? at(-1, step) : at(step, -1);
                ok = plus && minus;
                if (ok) {
                    d[k] = (*plus - *minus) / (2.0 * h);
                }
            }
            if (ok) {
                return sign * (-3.0 * d[0] + 4.0 * d[1] - d[2]) / (2.0 * h);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

VectorField gradient(const ScalarField& f)
{
    return {f.grid_ptr(), gradient_values(f.grid(), f.values(), f.trace())};
}

MatrixField hessian(const ScalarField& f)
{
    const DiskGrid& grid = f.grid();
    const double h = grid.spacing();
    const auto values = f.values();
    const auto trace = f.trace();

    MatrixField out{f.grid_ptr(), std::vector<Sym2>(grid.size())};
    std::vector<std::size_t> fallback;
    for (std::size_t node = 0; node < grid.size(); ++node) {
        Sym2& m = out.values[node];
        m.xx = second_derivative(axis_stencil(grid, values, trace, node, 0, ArmPolicy::Merged), h);
        m.yy = second_derivative(axis_stencil(grid, values, trace, node, 1, ArmPolicy::Merged), h);

        if (const auto xy = mixed_partial(grid, values, node)) {
            m.xy = *xy;
        } else {
            fallback.push_back(node);
        }
    }
    if (!fallback.empty()) {
        const auto g = gradient_values(grid, values, trace);
        std::vector<double> gx(grid.size());
        std::vector<double> gy(grid.size());
        for (std::size_t node = 0; node < grid.size(); ++node) {
            gx[node] = g[node][0];
            gy[node] = g[node][1];
        }
        for (const std::size_t node : fallback) {
            const double dy_gx = first_derivative(axis_stencil(grid, gx, {}, node, 1, ArmPolicy::Merged), h);
            const double dx_gy = first_derivative(axis_stencil(grid, gy, {}, node, 0, ArmPolicy::Merged), h);
            out.values[node].xy = 0.5 * (dy_gx + dx_gy);
        }
    }
    return out;
}

ScalarField laplacian(const ScalarField& f)
{
    const DiskGrid& grid = f.grid();
    const double h = grid.spacing();
    std::vector<double> out(grid.size());
    for (std::size_t node = 0; node < grid.size(); ++node) {
        out[node] =
            second_derivative(axis_stencil(grid, f.values(), f.trace(), node, 0, ArmPolicy::ShortleyWeller), h) +
            second_derivative(axis_stencil(grid, f.values(), f.trace(), node, 1, ArmPolicy::ShortleyWeller), h);
    }
    return ScalarField(f.grid_ptr(), std::move(out));
}

double sup_norm(std::span<const double> values, const DiskGrid& grid, NodeSet set)
{
    double m = 0.0;
    for (std::size_t node = 0; node < values.size(); ++node) {
        const NodeKind kind = grid.kind(node);
        if ((set == NodeSet::Interior && kind != NodeKind::Interior) ||
            (set == NodeSet::BoundaryCut && kind != NodeKind::BoundaryCut)) {
            continue;
        }
        m = std::max(m, std::abs(values[node]));
    }
    return m;
}

double sup_norm(const ScalarField& f, NodeSet set) { return sup_norm(f.values(), f.grid(), set); }

double ck_norm(const ScalarField& f, int k)
{
    if (k < 0 || k > 2) {
        throw InvalidParameter("ck_norm supports k in {0, 1, 2}, got " + std::to_string(k));
    }
    double m = sup_norm(f);
    if (k >= 1) {
        for (const auto& g : gradient(f).values) {
            m = std::max({m, std::abs(g[0]), std::abs(g[1])});
        }
    }
    if (k >= 2) {
        for (const auto& s : hessian(f).values) {
            m = std::max({m, std::abs(s.xx), std::abs(s.xy), std::abs(s.yy)});
        }
    }
    return m;
}

}  // namespace mgraph
