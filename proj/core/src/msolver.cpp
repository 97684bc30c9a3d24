#include "mgraph/msolver.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mgraph {

ScalarField nonlinearity_F(const ScalarField& u)
{
    const VectorField g = gradient(u);
    const MatrixField hs = hessian(u);
    std::vector<double> out(u.size());
    for (std::size_t node = 0; node < out.size(); ++node) {
        const auto [ux, uy] = g.values[node];
        const Sym2& m = hs.values[node];
        const double quad = ux * ux * m.xx + 2.0 * ux * uy * m.xy + uy * uy * m.yy;
        out[node] = quad / (1.0 + ux * ux + uy * uy);
    }
    return ScalarField(u.grid_ptr(), std::move(out));
}

ScalarField ms_residual(const ScalarField& u) { return laplacian(u) - nonlinearity_F(u); }

ScalarField ms_residual_divergence(const ScalarField& u)
{
    const VectorField g = gradient(u);
    std::vector<double> fx(u.size());
    std::vector<double> fy(u.size());
    for (std::size_t node = 0; node < u.size(); ++node) {
        const auto [ux, uy] = g.values[node];
        const double scale = 1.0 / std::sqrt(1.0 + ux * ux + uy * uy);
        fx[node] = ux * scale;
        fy[node] = uy * scale;
    }
    const VectorField dfx = gradient(ScalarField(u.grid_ptr(), std::move(fx)));
    const VectorField dfy = gradient(ScalarField(u.grid_ptr(), std::move(fy)));
    std::vector<double> out(u.size());
    for (std::size_t node = 0; node < u.size(); ++node) {
        out[node] = dfx.values[node][0] + dfy.values[node][1];
    }
    return ScalarField(u.grid_ptr(), std::move(out));
}

void PicardConfig::validate() const
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidParameter("epsilon must be positive");
    }
    if (!(stop_tol > 0.0)) {
        throw InvalidParameter("stop_tol must be positive");
    }
    if (max_iters < 1) {
        throw InvalidParameter("max_iters must be at least 1");
    }
    if (k_norm != 2) {
        throw InvalidParameter("the iteration is measured in the C^2 norm; k_norm must be 2");
    }
    if (!(poisson_tol > 0.0 && poisson_tol <= 1e-2)) {
        throw InvalidParameter("Poisson tolerance must lie in (0, 1e-2]");
    }
}

double gamma_of(const ScalarField& v, double epsilon)
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidParameter("epsilon must be positive");
    }
    const double v_norm = ck_norm(v, 2);
    if (!(v_norm > 0.0)) {
        throw InvalidParameter("seed vanishes identically; gamma is undefined");
    }
    return epsilon / (2.0 * v_norm);
}

std::optional<double> IterationReport::mean_ratio() const
{
    double log_sum = 0.0;
    int count = 0;
    for (const auto& rec : iterations) {
        if (rec.ratio) {
            log_sum += std::log(*rec.ratio);
            ++count;
        }
    }
    if (count == 0) {
        return std::nullopt;
    }
    return std::exp(log_sum / count);
}

PicardResult picard_solve(const ScalarField& v, const PicardConfig& cfg)
{
    const LaplaceOperator op(v.grid_ptr());
    return picard_solve(v, cfg, op);
}

PicardResult picard_solve(const ScalarField& v, const PicardConfig& cfg, const LaplaceOperator& op)
{
    cfg.validate();
    if (!v.has_trace()) {
        throw InvalidParameter("the seed field needs its boundary trace");
    }
    IterationReport report;
    report.epsilon = cfg.epsilon;
    report.gamma = gamma_of(v, cfg.epsilon);

    // Rounding in the stencils can put ||gamma v|| a few ulps above epsilon / 2;
    // shrink gamma by that much so the bound holds in floating point too.
    ScalarField base = report.gamma * v;  // u_0 = gamma v
    report.u0_norm = ck_norm(base, 2);
    for (int attempt = 0; attempt < 8 && report.u0_norm > 0.5 * cfg.epsilon; ++attempt) {
        report.gamma *= (0.5 * cfg.epsilon / report.u0_norm) * (1.0 - 4.0 * std::numeric_limits<double>::epsilon());
        base = report.gamma * v;
        report.u0_norm = ck_norm(base, 2);
    }
    report.lambda = 1.0 / report.gamma;
    const std::vector<double> zero_trace(v.grid().cut_arms().size(), 0.0);

    ScalarField u = base;
    ScalarField w = ScalarField::zeros(v.grid_ptr());
    ScalarField f_prev;
    report.max_u_norm = report.u0_norm;
    std::optional<double> prev_diff;

    try {
        for (int j = 0; j < cfg.max_iters; ++j) {
            IterationRecord rec;
            rec.index = j;
            rec.u_norm = j == 0 ? report.u0_norm : ck_norm(u, 2);

            ScalarField f = nonlinearity_F(u);
            rec.f_sup = sup_norm(f);
            const ScalarField drive = j == 0 ? f : f - f_prev;
            auto [increment, stats] = op.solve(drive, zero_trace, cfg.poisson_tol);
            rec.solve = stats;
            rec.diff_norm = ck_norm(increment, 2);  // u_{j+1} - u_j = w_j - w_{j-1}
            if (prev_diff) {
                rec.ratio = rec.diff_norm / *prev_diff;
            }

            w += increment;
            u = base + w;
            f_prev = std::move(f);
            report.iterations.push_back(rec);

            const double u_next_norm = ck_norm(u, 2);
            report.max_u_norm = std::max(report.max_u_norm, u_next_norm);

            if (rec.ratio && !(*rec.ratio < 1.0)) {
                throw ContractionFailure("contraction ratio " + std::to_string(*rec.ratio) + " at iteration " +
                                             std::to_string(j) + "; epsilon " + std::to_string(cfg.epsilon) +
                                             " is too large for this seed",
                                         report);
            }
            if (rec.diff_norm < cfg.stop_tol) {
                report.converged = true;
                break;
            }
            prev_diff = rec.diff_norm;
        }
    } catch (const NonFiniteValue& e) {
        throw ContractionFailure(std::string("iteration diverged: ") + e.what(), report);
    }
    if (!report.converged) {
        throw ContractionFailure("no convergence within " + std::to_string(cfg.max_iters) + " iterations", report);
    }

    report.induction_bound_held = report.max_u_norm < cfg.epsilon;
    const ScalarField deviation = report.lambda * w;
    report.deviation_c2 = ck_norm(deviation, 2);
    report.deviation_c0 = sup_norm(deviation);
    const ScalarField residual = ms_residual(u);
    report.ms_residual_interior = sup_norm(residual, NodeSet::Interior);
    report.ms_residual_boundary = sup_norm(residual, NodeSet::BoundaryCut);

    return {std::move(u), std::move(w), report.lambda, std::move(report)};
}

}  // namespace mgraph
