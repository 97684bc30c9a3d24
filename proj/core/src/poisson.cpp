#include "mgraph/poisson.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace mgraph {

std::vector<double> boundary_trace(const DiskGrid& grid, const BoundaryFunction& g)
{
    std::vector<double> trace(grid.cut_arms().size(), 0.0);
    if (g) {
        for (std::size_t c = 0; c < trace.size(); ++c) {
            trace[c] = g(grid.cut_arms()[c].point);
        }
    }
    return trace;
}

struct LaplaceOperator::Impl {
    using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

    GridPtr grid;
    Sparse interior;  // acts on node values
    Sparse boundary;  // acts on the cut-point trace
};

LaplaceOperator::LaplaceOperator(GridPtr grid) : impl_(std::make_unique<Impl>())
{
    const DiskGrid& g = *grid;
    const double h2 = g.spacing() * g.spacing();
    const auto n = static_cast<Eigen::Index>(g.size());
    const auto m = static_cast<Eigen::Index>(g.cut_arms().size());

    std::vector<Eigen::Triplet<double>> inner;
    std::vector<Eigen::Triplet<double>> outer;
    inner.reserve(static_cast<std::size_t>(5 * n));
    outer.reserve(static_cast<std::size_t>(m));
    for (std::size_t node = 0; node < g.size(); ++node) {
        const auto row = static_cast<Eigen::Index>(node);
        double diag = 0.0;
        for (const auto& [plus, minus] : {std::pair{Direction::East, Direction::West},
                                         std::pair{Direction::North, Direction::South}}) {
            const double b = g.arm(node, plus);
            const double a = g.arm(node, minus);
            diag -= 2.0 / (a * b * h2);
            for (const auto& [dir, arm] : {std::pair{plus, b}, std::pair{minus, a}}) {
                const double coeff = 2.0 / (arm * (a + b) * h2);
                if (const auto nb = g.neighbor(node, dir)) {
                    inner.emplace_back(row, static_cast<Eigen::Index>(*nb), coeff);
                } else {
                    outer.emplace_back(row, g.cut_index(node, dir), coeff);
                }
            }
        }
        inner.emplace_back(row, row, diag);
    }
    impl_->grid = std::move(grid);
    impl_->interior.resize(n, n);
    impl_->interior.setFromTriplets(inner.begin(), inner.end());
    impl_->boundary.resize(n, m);
    impl_->boundary.setFromTriplets(outer.begin(), outer.end());
}

LaplaceOperator::~LaplaceOperator() = default;
LaplaceOperator::LaplaceOperator(LaplaceOperator&&) noexcept = default;
LaplaceOperator& LaplaceOperator::operator=(LaplaceOperator&&) noexcept = default;

const GridPtr& LaplaceOperator::grid() const noexcept { return impl_->grid; }

std::size_t LaplaceOperator::unknowns() const noexcept { return impl_->grid->size(); }

ScalarField LaplaceOperator::apply(const ScalarField& u) const
{
    if (!u.has_trace()) {
        throw InvalidParameter("applying the Dirichlet Laplacian needs the field's boundary trace");
    }
    const auto n = static_cast<Eigen::Index>(u.size());
    const auto m = static_cast<Eigen::Index>(u.trace().size());
    const Eigen::Map<const Eigen::VectorXd> values(u.values().data(), n);
    const Eigen::Map<const Eigen::VectorXd> trace(u.trace().data(), m);
    const Eigen::VectorXd out = impl_->interior * values + impl_->boundary * trace;
    return ScalarField(impl_->grid, std::vector<double>(out.data(), out.data() + n));
}

std::pair<ScalarField, LinearSolveStats> LaplaceOperator::solve(const ScalarField& rhs,
                                                                std::span<const double> trace, double tol) const
{
    if (!(tol > 0.0 && tol <= 1e-2)) {
        throw InvalidParameter("Poisson tolerance must lie in (0, 1e-2]");
    }
    const DiskGrid& g = *impl_->grid;
    if (rhs.size() != g.size() || trace.size() != g.cut_arms().size()) {
        throw InvalidParameter("Poisson data does not match the grid");
    }
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::Map<const Eigen::VectorXd> f(rhs.values().data(), n);
    const Eigen::Map<const Eigen::VectorXd> gb(trace.data(), static_cast<Eigen::Index>(trace.size()));
    const Eigen::VectorXd b = f - impl_->boundary * gb;

    LinearSolveStats stats;
    stats.unknowns = g.size();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    if (b.squaredNorm() > 0.0) {
        // Solver state is local so that concurrent solves on one operator are safe.
        Eigen::BiCGSTAB<Impl::Sparse, Eigen::DiagonalPreconditioner<double>> solver(impl_->interior);
        solver.setTolerance(tol);
        solver.setMaxIterations(static_cast<Eigen::Index>(std::ceil(50.0 * std::sqrt(static_cast<double>(n)))));
        // The recurrence residual can drift from the true one; restart from the
        // current iterate until the true residual meets the tolerance.
        bool ok = false;
        for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
            x = solver.solveWithGuess(b, x);
            stats.iterations += static_cast<int>(solver.iterations());
            stats.relative_residual = (impl_->interior * x - b).norm() / b.norm();
            ok = solver.info() == Eigen::Success && stats.relative_residual <= tol;
            if (solver.info() != Eigen::Success) {
                break;
            }
        }
        if (!ok) {
            throw SolverStall("BiCGSTAB did not reach relative residual " + std::to_string(tol) + " in " +
                                  std::to_string(stats.iterations) + " iterations (residual " +
                                  std::to_string(stats.relative_residual) + ")",
                              stats);
        }
    }
    return {ScalarField(impl_->grid, std::vector<double>(x.data(), x.data() + n),
                        std::vector<double>(trace.begin(), trace.end())),
            stats};
}

LaplaceOperator assemble(GridPtr grid) { return LaplaceOperator(std::move(grid)); }

std::pair<ScalarField, LinearSolveStats> solve_dirichlet(const PoissonProblem& problem, double tol)
{
    const LaplaceOperator op(problem.rhs.grid_ptr());
    const auto trace = boundary_trace(problem.rhs.grid(), problem.boundary_data);
    return op.solve(problem.rhs, trace, tol);
}

MaximumPrincipleCheck maximum_principle_check(const PoissonProblem& problem, const ScalarField& solution)
{
    double sup_g = 0.0;
    for (const double v : boundary_trace(problem.rhs.grid(), problem.boundary_data)) {
        sup_g = std::max(sup_g, std::abs(v));
    }
    MaximumPrincipleCheck check;
    check.bound = 0.25 * sup_norm(problem.rhs) + sup_g;
    check.sup_solution = sup_norm(solution);
    check.margin = check.bound - check.sup_solution;
    check.holds = check.margin >= -1e-8 * std::max(1.0, check.bound);
    return check;
}

}  // namespace mgraph
