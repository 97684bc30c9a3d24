#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "mgraph/error.hpp"
#include "mgraph/grid.hpp"

namespace mgraph {

struct LinearSolveStats {
    int iterations{0};
    double relative_residual{0.0};
    std::size_t unknowns{0};
};

class SolverStall : public Error {
public:
    SolverStall(const std::string& what, LinearSolveStats stats)
        : Error(ErrorKind::SolverStall, what), stats_(stats)
    {
    }

    [[nodiscard]] const LinearSolveStats& stats() const noexcept { return stats_; }

private:
    LinearSolveStats stats_;
};

using BoundaryFunction = std::function<double(Point2)>;

/// Delta w = rhs in the disk, w = boundary_data on the circle (zero when empty).
struct PoissonProblem {
    ScalarField rhs;
    BoundaryFunction boundary_data;
};

/// Values of g at the grid's cut points, ordered like DiskGrid::cut_arms().
std::vector<double> boundary_trace(const DiskGrid& grid, const BoundaryFunction& g);

/// The Shortley-Weller Laplacian on the active nodes, split into the part acting
/// on node values and the part acting on the boundary trace.
class LaplaceOperator {
public:
    explicit LaplaceOperator(GridPtr grid);
    ~LaplaceOperator();
    LaplaceOperator(LaplaceOperator&&) noexcept;
    LaplaceOperator& operator=(LaplaceOperator&&) noexcept;

    [[nodiscard]] const GridPtr& grid() const noexcept;
    [[nodiscard]] std::size_t unknowns() const noexcept;

    /// A u + B g, where g is u's trace. Throws InvalidParameter if u has none.
    [[nodiscard]] ScalarField apply(const ScalarField& u) const;

    /// Solves A w = rhs - B g to the given relative residual with BiCGSTAB and a
    /// Jacobi preconditioner. The iteration cap is 50 sqrt(unknowns).
    /// Throws SolverStall when the cap is reached.
    [[nodiscard]] std::pair<ScalarField, LinearSolveStats> solve(const ScalarField& rhs,
                                                                 std::span<const double> trace,
                                                                 double tol) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

LaplaceOperator assemble(GridPtr grid);

/// tol is the relative residual, in (0, 1e-2].
std::pair<ScalarField, LinearSolveStats> solve_dirichlet(const PoissonProblem& problem, double tol = 1e-10);

struct MaximumPrincipleCheck {
    bool holds{false};
    double bound{0.0};         // sup|f| / 4 + sup|g|
    double sup_solution{0.0};  // sup|w|
    double margin{0.0};        // bound - sup|w|
};

/// Checks sup|w| <= sup|f| / 4 + sup|g|, the barrier bound for the unit disk.
MaximumPrincipleCheck maximum_principle_check(const PoissonProblem& problem, const ScalarField& solution);

}  // namespace mgraph
