#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgraph_app/config.hpp"
#include "mgraph_app/runs.hpp"

namespace mgraph::app {

/// Errors of one operator on a ladder of grids against a closed form.
struct OrderStudy {
    std::string name;
    std::string nodes;  // "all" or "interior"
    std::vector<double> h;
    std::vector<double> errors;
    std::optional<double> order;  // fitted slope of log(error) against log(h)
};

struct ValidationReport {
    std::vector<OrderStudy> studies;
    std::vector<Check> checks;
    [[nodiscard]] bool passed() const { return all_passed(checks); }
};

/// Manufactured-solution suite: gradient, Hessian, Laplacian, F and the Poisson
/// solver against closed forms, plus the Scherk minimal graph residual. Orders
/// must land in [1.7, 2.3]; the quadratic Poisson solution must be exact.
ValidationReport run_validation(const ExperimentConfig& cfg, const std::vector<double>& ladder = {0.04, 0.02, 0.01});

}  // namespace mgraph::app
