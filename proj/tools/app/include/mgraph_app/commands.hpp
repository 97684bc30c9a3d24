#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "mgraph_app/config.hpp"
#include "mgraph_app/runs.hpp"

namespace mgraph::app {

enum ExitCode : int {
    kSuccess = 0,
    kAssertionFailed = 1,
    kConfigError = 2,
    kNumericalError = 3,
};

// Each command validates cfg, writes its files under cfg.out and returns an exit
// code. Failed checks give kAssertionFailed only under cfg.strict, except for
// validate, which always fails on a missed tolerance. Errors propagate as exceptions.
int cmd_validate(const ExperimentConfig& cfg, std::ostream& out);
int cmd_demo_theorem(const ExperimentConfig& cfg, std::ostream& out);
int cmd_level(const ExperimentConfig& cfg, std::ostream& out);
int cmd_sweep_epsilon(const ExperimentConfig& cfg, std::ostream& out);
int cmd_solve(const ExperimentConfig& cfg, std::ostream& out);

/// Runs a command and maps exceptions onto exit codes: configuration and parse
/// errors give kConfigError, numerical failures kNumericalError.
int guarded(const std::function<int()>& command, std::ostream& err);

/// Pretty-printed, key-sorted JSON without timestamps; identical inputs give identical bytes.
std::string demo_summary_json(const ExperimentConfig& cfg, const DemoResult& result);

/// Rows "epsilon,rho_mean,deviation,shift,iterations"; missing values print as n/a.
std::string sweep_csv(const SweepResult& result);

}  // namespace mgraph::app
