#include "mgraph_app/runs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mgraph/curve.hpp"
#include "mgraph/error.hpp"

namespace mgraph::app {

namespace {

constexpr int kReferenceSamples = 2001;

Check check(std::string name, double measured, std::string criterion, bool passed)
{
    return Check{std::move(name), measured, std::move(criterion), passed};
}

LevelSet curve_as_level_set(const CurveSpec& curve)
{
    Polyline line;
    line.vertices = curve.polyline(kReferenceSamples);
    if (curve.closed()) {
        line.vertices.pop_back();
        line.closed = true;
    }
    return make_level_set({std::move(line)});
}

}  // namespace

bool all_passed(const std::vector<Check>& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::optional<double> fit_exponent(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) {
        return std::nullopt;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
            return std::nullopt;
        }
        const double lx = std::log(x[k]);
        const double ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        return std::nullopt;
    }
    return (n * sxy - sx * sy) / denom;
}

double select_stripe_frequency(double target_c)
{
    if (!(target_c >= 0.0) || !std::isfinite(target_c)) {
        throw InvalidParameter("target_c must be a finite non-negative length");
    }
    const double goal = 1.1 * target_c;
    if (predicted_nodal_length(StripeSinCosh{std::numbers::pi}) > goal) {
        return std::numbers::pi;
    }
    // Lengths grow roughly like 4k/pi, so this bound is far beyond any usable grid.
    for (int k = 4; k <= 100000; ++k) {
        if (predicted_nodal_length(StripeSinCosh{static_cast<double>(k)}) > goal) {
            return k;
        }
    }
    throw InvalidParameter("target_c is too large for any stripe frequency");
}

HarmonicSeed resolve_seed(const ExperimentConfig& cfg)
{
    if (cfg.seed == "curve") {
        const CurveSpec curve = resolve_curve(cfg.curve);
        curve.validate();
        return fit_cauchy_data(curve, cfg.degree).seed;
    }
    return parse_seed(cfg.seed);
}

DemoResult run_demo(const ExperimentConfig& cfg)
{
    DemoResult r;
    r.frequency = select_stripe_frequency(cfg.target_c);
    const StripeSinCosh stripe{r.frequency};
    r.predicted_length = predicted_nodal_length(stripe);

    const GridPtr grid = make_disk_grid(cfg.h);
    const ScalarField v = sample(HarmonicSeed{stripe}, grid);
    r.run = picard_solve(v, cfg.picard());
    r.zero_set = extract_zero_set(r.run.u);
    r.area = graph_area(r.run.u);
    const double eps = cfg.epsilon;
    r.area_bound = (1.0 + 2.0 * eps * eps) * std::numbers::pi;

    const std::string c = format_number(cfg.target_c);
    r.checks.push_back(check("zero-set length", r.zero_set.total_length, "> " + c,
                             r.zero_set.total_length > cfg.target_c));
    r.checks.push_back(check("transversality margin", r.zero_set.min_gradient, "> 0", r.zero_set.min_gradient > 0.0));
    r.checks.push_back(check("graph area", r.area, "<= (1 + 2 eps^2) pi = " + format_number(r.area_bound),
                             r.area <= r.area_bound));
    r.checks.push_back(check("induction bound", r.run.report.max_u_norm, "< eps = " + format_number(eps),
                             r.run.report.induction_bound_held));
    return r;
}

LevelResult run_level(const ExperimentConfig& cfg)
{
    const CurveSpec curve = resolve_curve(cfg.curve);
    curve.validate();
    LevelResult r;
    r.fit = fit_cauchy_data(curve, cfg.degree);

    const GridPtr grid = make_disk_grid(cfg.h);
    const ScalarField v = sample(HarmonicSeed{r.fit.seed}, grid);
    r.run = picard_solve(v, cfg.picard());
    r.zero_set = extract_zero_set(r.run.u);
    r.reference = curve_as_level_set(curve);
    r.tube_radius = cfg.neighborhood * cfg.h;
    r.restricted = restrict_to_neighborhood(r.zero_set, r.reference, r.tube_radius);
    if (!r.restricted.polylines.empty()) {
        r.restricted.min_gradient = transversality_margin(r.run.u, r.restricted);
    }
    r.hausdorff = hausdorff_distance(r.restricted, r.reference, 0.5 * cfg.h);
    r.margin = r.restricted.polylines.empty() ? 0.0
                                              : transversality_margin(r.run.lambda * r.run.u, r.restricted);

    r.checks.push_back(check("hausdorff distance to curve", r.hausdorff, "<= 10 h = " + format_number(10.0 * cfg.h),
                             r.hausdorff <= 10.0 * cfg.h));
    r.checks.push_back(check("transversality margin", r.margin, "> 0", r.margin > 0.0));
    r.checks.push_back(check("induction bound", r.run.report.max_u_norm, "< eps = " + format_number(cfg.epsilon),
                             r.run.report.induction_bound_held));
    return r;
}

SweepResult run_sweep(const ExperimentConfig& cfg)
{
    const GridPtr grid = make_disk_grid(cfg.h);
    const ScalarField v = sample(resolve_seed(cfg), grid);
    const LaplaceOperator op(grid);
    const LevelSet seed_zero_set = extract_zero_set(v);

    SweepResult r;
    std::vector<double> eps, rho, dev, shift;
    for (const double e : cfg.epsilons) {
        const PicardResult run = picard_solve(v, cfg.picard(e), op);
        SweepRow row;
        row.epsilon = e;
        row.rho_mean = run.report.mean_ratio();
        row.deviation = run.report.deviation_c0;
        row.shift = hausdorff_distance(seed_zero_set, extract_zero_set(run.u), 0.5 * cfg.h);
        row.iterations = static_cast<int>(run.report.iterations.size());
        row.report = run.report;
        eps.push_back(e);
        rho.push_back(row.rho_mean.value_or(0.0));
        dev.push_back(row.deviation);
        shift.push_back(row.shift);
        r.rows.push_back(std::move(row));
    }
    r.rho_exponent = fit_exponent(eps, rho);
    r.deviation_exponent = fit_exponent(eps, dev);
    r.shift_exponent = fit_exponent(eps, shift);
    return r;
}

SolveResult run_solve(const ExperimentConfig& cfg)
{
    const GridPtr grid = make_disk_grid(cfg.h);
    const ScalarField v = sample(resolve_seed(cfg), grid);
    SolveResult r;
    r.run = picard_solve(v, cfg.picard());
    r.zero_set = extract_zero_set(r.run.u);
    r.area = graph_area(r.run.u);
    return r;
}

}  // namespace mgraph::app
