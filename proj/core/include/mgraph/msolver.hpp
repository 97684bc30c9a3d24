#pragma once

#include <optional>
#include <vector>

#include "mgraph/error.hpp"
#include "mgraph/grid.hpp"
#include "mgraph/poisson.hpp"

namespace mgraph {

/// F(u) = (grad u)^T H(u) grad u / (1 + |grad u|^2), which equals
/// 1/2 grad u . grad log(1 + |grad u|^2). The minimal surface equation reads
/// laplacian(u) = F(u).
ScalarField nonlinearity_F(const ScalarField& u);

/// laplacian(u) - F(u), node by node.
ScalarField ms_residual(const ScalarField& u);

/// div(grad u / sqrt(1 + |grad u|^2)), by differencing the flux field. Equals
/// ms_residual(u) / sqrt(1 + |grad u|^2) up to discretisation error.
ScalarField ms_residual_divergence(const ScalarField& u);

struct PicardConfig {
    double epsilon{0.05};
    double stop_tol{1e-12};  // on ||u_{j+1} - u_j||_{C^2}
    int max_iters{100};
    int k_norm{2};
    double poisson_tol{1e-10};

    static constexpr double kRecommendedMaxEpsilon = 0.1;

    /// Throws InvalidParameter on a bad field.
    void validate() const;
    [[nodiscard]] bool above_recommended_epsilon() const { return epsilon > kRecommendedMaxEpsilon; }
};

/// gamma = epsilon / (2 ||v||_{C^2}). Throws InvalidParameter for epsilon <= 0 or v = 0.
double gamma_of(const ScalarField& v, double epsilon);

struct IterationRecord {
    int index{0};
    double u_norm{0.0};            // ||u_j||_{C^2}
    double diff_norm{0.0};         // ||u_{j+1} - u_j||_{C^2}
    std::optional<double> ratio;   // diff_norm / previous diff_norm
    double f_sup{0.0};             // ||F(u_j)||_{C^0}
    LinearSolveStats solve;
};

struct IterationReport {
    std::vector<IterationRecord> iterations;
    double epsilon{0.0};
    double gamma{0.0};              // gamma_of(v, epsilon), lowered by a few ulps if needed for u0_norm <= epsilon / 2
    double lambda{0.0};
    double u0_norm{0.0};
    double max_u_norm{0.0};         // over every iterate, u_0 and the final u included
    bool converged{false};
    bool induction_bound_held{false};  // ||u_j||_{C^2} < epsilon for every iterate
    double deviation_c2{0.0};       // ||lambda u - v||_{C^2}
    double deviation_c0{0.0};       // ||lambda u - v||_{C^0}
    double ms_residual_interior{0.0};
    double ms_residual_boundary{0.0};

    /// Geometric mean of the recorded contraction ratios; nullopt when none was recorded.
    [[nodiscard]] std::optional<double> mean_ratio() const;
};

class ContractionFailure : public Error {
public:
    ContractionFailure(const std::string& what, IterationReport report)
        : Error(ErrorKind::ContractionFailure, what), report_(std::move(report))
    {
    }

    [[nodiscard]] const IterationReport& report() const noexcept { return report_; }

private:
    IterationReport report_;
};

struct PicardResult {
    ScalarField u;       // the minimal graph, boundary values gamma v
    ScalarField w;       // u - gamma v, zero on the circle
    double lambda{0.0};  // 1 / gamma
    IterationReport report;
};

/// Picard iteration u_0 = gamma v, u_{j+1} = gamma v + w_j, laplacian(w_j) = F(u_j),
/// w_j = 0 on the circle. Each w_j is obtained from w_{j-1} by solving for the
/// increment driven by F(u_j) - F(u_{j-1}), which is the same iterate by linearity
/// and keeps the linear-solver tolerance relative to the (shrinking) update.
///
/// Stops once ||u_{j+1} - u_j||_{C^2} < stop_tol. Throws ContractionFailure when a
/// contraction ratio reaches 1, a value stops being finite, or max_iters is hit;
/// SolverStall propagates from the Poisson solves.
PicardResult picard_solve(const ScalarField& v, const PicardConfig& cfg);
PicardResult picard_solve(const ScalarField& v, const PicardConfig& cfg, const LaplaceOperator& op);

}  // namespace mgraph
