#include "mgraph_app/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "mgraph/msolver.hpp"
#include "mgraph/poisson.hpp"

namespace mgraph::app {

namespace {

using std::cos;
using std::sin;

// f = sin(2x + 1) cos(3y) and its derivatives.
double f(Point2 p) { return sin(2 * p.x + 1) * cos(3 * p.y); }
double fx(Point2 p) { return 2 * cos(2 * p.x + 1) * cos(3 * p.y); }
double fy(Point2 p) { return -3 * sin(2 * p.x + 1) * sin(3 * p.y); }
double fxx(Point2 p) { return -4 * f(p); }
double fyy(Point2 p) { return -9 * f(p); }
double fxy(Point2 p) { return -6 * cos(2 * p.x + 1) * sin(3 * p.y); }

double f_nonlinearity(Point2 p)
{
    const double gx = fx(p), gy = fy(p);
    return (gx * gx * fxx(p) + 2 * gx * gy * fxy(p) + gy * gy * fyy(p)) / (1 + gx * gx + gy * gy);
}

bool counted(const DiskGrid& grid, std::size_t node, bool interior_only)
{
    return !interior_only || grid.kind(node) == NodeKind::Interior;
}

using Measure = std::function<double(const GridPtr&)>;

OrderStudy study(std::string name, bool interior_only, const std::vector<double>& ladder, const Measure& measure)
{
    OrderStudy s;
    s.name = std::move(name);
    s.nodes = interior_only ? "interior" : "all";
    for (const double h : ladder) {
        s.h.push_back(h);
        s.errors.push_back(measure(make_disk_grid(h)));
    }
    s.order = fit_exponent(s.h, s.errors);
    return s;
}

double scherk(Point2 p) { return std::log(cos(p.x) / cos(p.y)); }

}  // namespace

ValidationReport run_validation(const ExperimentConfig& cfg, const std::vector<double>& ladder)
{
    const double tol = cfg.poisson_tol;
    ValidationReport report;

    report.studies.push_back(study("gradient", false, ladder, [](const GridPtr& g) {
        const VectorField grad = gradient(ScalarField::sample(g, f));
        double err = 0.0;
        for (std::size_t n = 0; n < g->size(); ++n) {
            const Point2 p = g->position(n);
            err = std::max({err, std::abs(grad.values[n][0] - fx(p)), std::abs(grad.values[n][1] - fy(p))});
        }
        return err;
    }));
    report.studies.push_back(study("hessian", true, ladder, [](const GridPtr& g) {
        const MatrixField hs = hessian(ScalarField::sample(g, f));
        double err = 0.0;
        for (std::size_t n = 0; n < g->size(); ++n) {
            if (!counted(*g, n, true)) {
                continue;
            }
            const Point2 p = g->position(n);
            const Sym2& m = hs.values[n];
            err = std::max({err, std::abs(m.xx - fxx(p)), std::abs(m.xy - fxy(p)), std::abs(m.yy - fyy(p))});
        }
        return err;
    }));
    report.studies.push_back(study("laplacian", true, ladder, [](const GridPtr& g) {
        const ScalarField lap = laplacian(ScalarField::sample(g, f));
        const ScalarField exact = ScalarField::sample(g, [](Point2 p) { return -13 * f(p); });
        return sup_norm((lap - exact), NodeSet::Interior);
    }));
    report.studies.push_back(study("nonlinearity F", true, ladder, [](const GridPtr& g) {
        const ScalarField num = nonlinearity_F(ScalarField::sample(g, f));
        const ScalarField exact = ScalarField::sample(g, f_nonlinearity);
        return sup_norm(num - exact, NodeSet::Interior);
    }));
    report.studies.push_back(study("poisson sin-product", false, ladder, [tol](const GridPtr& g) {
        const auto exact = [](Point2 p) { return sin(std::numbers::pi * p.x) * sin(std::numbers::pi * p.y); };
        const double k2 = 2 * std::numbers::pi * std::numbers::pi;
        const ScalarField rhs = ScalarField::sample(g, [&](Point2 p) { return -k2 * exact(p); }).without_trace();
        const auto [w, stats] = solve_dirichlet({rhs, exact}, tol);
        return sup_norm(w - ScalarField::sample(g, exact));
    }));
    report.studies.push_back(study("scherk residual", true, ladder, [](const GridPtr& g) {
        return sup_norm(ms_residual(ScalarField::sample(g, scherk)), NodeSet::Interior);
    }));

    for (const auto& s : report.studies) {
        const double order = s.order.value_or(0.0);
        report.checks.push_back(
            Check{s.name + " order", order, "in [1.7, 2.3]", s.order && order >= 1.7 && order <= 2.3});
    }

    // Quadratic exactness and the barrier bound on the finest grid.
    const GridPtr fine = make_disk_grid(ladder.back());
    const ScalarField rhs = ScalarField::sample(fine, [](Point2) { return -4.0; }).without_trace();
    const PoissonProblem quad{rhs, {}};
    const auto [w, stats] = solve_dirichlet(quad, tol);
    const ScalarField exact = ScalarField::sample(fine, [](Point2 p) { return 1 - p.x * p.x - p.y * p.y; });
    const double exact_err = sup_norm(w - exact);
    report.checks.push_back(Check{"poisson quadratic exactness", exact_err, "<= 1e-8", exact_err <= 1e-8});
    const MaximumPrincipleCheck mp = maximum_principle_check(quad, w);
    report.checks.push_back(Check{"maximum principle margin", mp.margin, ">= 0", mp.holds});
    return report;
}

}  // namespace mgraph::app
