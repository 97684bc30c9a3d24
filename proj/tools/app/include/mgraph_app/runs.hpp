#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgraph/geometry.hpp"
#include "mgraph/harmonic.hpp"
#include "mgraph/msolver.hpp"
#include "mgraph_app/config.hpp"

namespace mgraph::app {

/// A reported assertion. Soft unless the command runs with --strict.
struct Check {
    std::string name;
    double measured{0.0};
    std::string criterion;  // human-readable threshold, e.g. "> 10"
    bool passed{false};
};

bool all_passed(const std::vector<Check>& checks);

/// Least-squares slope of log(y) against log(x); nullopt for fewer than two
/// points or any non-positive value.
std::optional<double> fit_exponent(const std::vector<double>& x, const std::vector<double>& y);

/// Smallest stripe frequency on the ladder pi, 4, 5, 6, ... whose predicted nodal
/// length exceeds 1.1 c. Throws InvalidParameter for c < 0 or an unreachable c.
double select_stripe_frequency(double target_c);

/// The seed named by cfg.seed, with a Cauchy fit of cfg.curve for "curve".
HarmonicSeed resolve_seed(const ExperimentConfig& cfg);

struct DemoResult {
    double frequency{0.0};
    double predicted_length{0.0};
    PicardResult run;
    LevelSet zero_set;
    double area{0.0};
    double area_bound{0.0};
    std::vector<Check> checks;
};

/// Stripe seed chosen for cfg.target_c, promoted at cfg.epsilon on a grid of spacing cfg.h.
DemoResult run_demo(const ExperimentConfig& cfg);

struct LevelResult {
    CauchyFit fit;
    PicardResult run;
    LevelSet zero_set;    // full zero set of u
    LevelSet reference;   // the input curve as a fine polyline
    LevelSet restricted;  // zero set within the tube around the curve
    double tube_radius{0.0};
    double hausdorff{0.0};
    double margin{0.0};  // min |grad(lambda u)| along the restricted zero set
    std::vector<Check> checks;
};

/// Cauchy fit of cfg.curve with cfg.degree, promotion, extraction and comparison.
LevelResult run_level(const ExperimentConfig& cfg);

struct SweepRow {
    double epsilon{0.0};
    std::optional<double> rho_mean;
    double deviation{0.0};  // ||lambda u - v||_{C^0}
    double shift{0.0};      // Hausdorff distance between the zero sets of v and u
    int iterations{0};
    IterationReport report;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::optional<double> rho_exponent;
    std::optional<double> deviation_exponent;
    std::optional<double> shift_exponent;
};

/// One promotion per value in cfg.epsilons, all on the same grid and seed.
SweepResult run_sweep(const ExperimentConfig& cfg);

struct SolveResult {
    PicardResult run;
    LevelSet zero_set;
    double area{0.0};
};

SolveResult run_solve(const ExperimentConfig& cfg);

}  // namespace mgraph::app
