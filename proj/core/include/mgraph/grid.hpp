#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace mgraph {

struct Point2 {
    double x{0.0};
    double y{0.0};
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
double norm(Point2 p);
double dot(Point2 a, Point2 b);

enum class NodeKind : std::uint8_t { Interior, BoundaryCut, Exterior };

/// Axis directions, ordered +x, -x, +y, -y.
enum class Direction : std::uint8_t { East = 0, West = 1, North = 2, South = 3 };

/// A stencil arm of an active node that is cut short by the circle |x| = 1.
struct CutArm {
    std::size_t node;
    Direction direction;
    double fraction;  // arm length in units of h, in (0, 1]
    Point2 point;     // where the arm meets the circle
};

/// Uniform lattice {(i h, j h) : |i|, |j| <= n} over [-1, 1]^2, restricted to the unit disk.
///
/// Nodes strictly inside the disk are "active": interior nodes have all four axis
/// neighbours active, boundary-cut nodes have at least one arm ending on the circle.
/// Active nodes are numbered row-major (j outer, i inner).
class DiskGrid {
public:
    /// Cut points closer than this (in units of h) are not used by the gradient and
    /// Hessian stencils; the node is treated as lying on the boundary.
    static constexpr double kMergeFraction = 0.1;

    /// Throws InvalidParameter unless 0 < h <= 0.5.
    explicit DiskGrid(double h);

    [[nodiscard]] double spacing() const noexcept { return h_; }
    [[nodiscard]] int half_width() const noexcept { return n_; }
    [[nodiscard]] int lattice_width() const noexcept { return 2 * n_ + 1; }

    [[nodiscard]] std::size_t size() const noexcept { return positions_.size(); }
    [[nodiscard]] std::size_t interior_count() const noexcept { return interior_count_; }
    [[nodiscard]] std::size_t cut_count() const noexcept { return size() - interior_count_; }

    [[nodiscard]] Point2 position(std::size_t node) const { return positions_[node]; }
    [[nodiscard]] std::array<int, 2> lattice_index(std::size_t node) const { return lattice_[node]; }
    [[nodiscard]] NodeKind kind(std::size_t node) const { return kinds_[node]; }

    /// Classification of an arbitrary lattice point.
    [[nodiscard]] NodeKind kind_at(int i, int j) const;
    [[nodiscard]] std::optional<std::size_t> node_at(int i, int j) const;
    [[nodiscard]] std::optional<std::size_t> neighbor(std::size_t node, Direction d) const;

    /// Arm length in units of h: 1 towards an active neighbour, the cut fraction otherwise.
    [[nodiscard]] double arm(std::size_t node, Direction d) const { return arms_[node][static_cast<int>(d)]; }

    [[nodiscard]] std::span<const CutArm> cut_arms() const noexcept { return cuts_; }

    /// Index into cut_arms() or -1 when the arm reaches an active neighbour.
    [[nodiscard]] int cut_index(std::size_t node, Direction d) const
    {
        return cut_ids_[node][static_cast<int>(d)];
    }

private:
    [[nodiscard]] std::int64_t lattice_slot(int i, int j) const;

    double h_;
    int n_;
    std::size_t interior_count_{0};
    std::vector<Point2> positions_;
    std::vector<std::array<int, 2>> lattice_;
    std::vector<NodeKind> kinds_;
    std::vector<std::array<double, 4>> arms_;
    std::vector<std::array<int, 4>> cut_ids_;
    std::vector<CutArm> cuts_;
    std::vector<std::int64_t> slot_to_node_;  // -1 for exterior lattice points
};

using GridPtr = std::shared_ptr<const DiskGrid>;

/// Convenience: construct a shared, immutable grid.
GridPtr make_disk_grid(double h);

/// One value per active node, plus (optionally) the values at the cut points
/// of the boundary arms, i.e. the Dirichlet trace on the circle.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(GridPtr grid, std::vector<double> values, std::vector<double> trace = {});

    /// Zero field with a zero trace.
    static ScalarField zeros(GridPtr grid);
    /// Samples f at every active node and every cut point.
    static ScalarField sample(GridPtr grid, const std::function<double(Point2)>& f);

    [[nodiscard]] const DiskGrid& grid() const { return *grid_; }
    [[nodiscard]] const GridPtr& grid_ptr() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<const double> trace() const noexcept { return trace_; }
    [[nodiscard]] bool has_trace() const noexcept { return !trace_.empty(); }
    [[nodiscard]] double operator[](std::size_t node) const { return values_[node]; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    /// Same values, trace dropped.
    [[nodiscard]] ScalarField without_trace() const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);

private:
    GridPtr grid_;
    std::vector<double> values_;
    std::vector<double> trace_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

struct VectorField {
    GridPtr grid;
    std::vector<std::array<double, 2>> values;
};

struct Sym2 {
    double xx{0.0};
    double xy{0.0};
    double yy{0.0};
};

struct MatrixField {
    GridPtr grid;
    std::vector<Sym2> values;
};

/// Which active nodes a sup norm runs over.
enum class NodeSet { All, Interior, BoundaryCut };

/// Second-order first derivatives: central where both neighbours are available,
/// one-sided three-point stencils otherwise. Cut points are used when the field
/// carries a trace and the cut fraction is at least kMergeFraction.
VectorField gradient(const ScalarField& f);

/// Second derivatives on the same point sets as gradient(); the mixed partial uses
/// the 4-point cross stencil, or differentiates the gradient where a diagonal
/// neighbour is missing.
MatrixField hessian(const ScalarField& f);

/// Five-point Laplacian with Shortley-Weller unequal arms at boundary-cut nodes.
/// This is the operator the Poisson solver inverts.
ScalarField laplacian(const ScalarField& f);

/// Discrete C^k norm, k in {0, 1, 2}: the largest absolute value of f and of its
/// derivatives up to order k, over all active nodes.
double ck_norm(const ScalarField& f, int k);

double sup_norm(const ScalarField& f, NodeSet set = NodeSet::All);
double sup_norm(std::span<const double> values, const DiskGrid& grid, NodeSet set);

}  // namespace mgraph
