#pragma once

#include <string>
#include <vector>

#include "mgraph/msolver.hpp"

namespace mgraph::app {

/// Every knob of a run. Field names double as config-file keys and long flags.
struct ExperimentConfig {
    double h{0.01};
    double epsilon{0.05};
    std::string seed{"stripe:10"};  // "stripe:<k>", "rezm:<m>" or "curve" (Cauchy fit of `curve`)
    std::string curve{"segment"};   // built-in name or curve file
    int degree{8};                  // harmonic polynomial degree for Cauchy fits
    double target_c{10.0};
    std::vector<double> epsilons{0.1, 0.05, 0.025};
    double poisson_tol{1e-10};
    double stop_tol{1e-12};
    int max_iters{100};
    double neighborhood{4.0};  // tube radius around the input curve, in units of h
    std::string out{"mgraph-out"};
    bool strict{false};

    /// Throws InvalidParameter naming the offending key.
    void validate() const;

    [[nodiscard]] PicardConfig picard(double eps) const;
    [[nodiscard]] PicardConfig picard() const { return picard(epsilon); }

    /// "key = value" lines readable by --config; doubles round-trip exactly.
    [[nodiscard]] std::string to_ini() const;
};

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

}  // namespace mgraph::app
