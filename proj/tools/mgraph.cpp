// mgraph: minimal graphs over the unit disk with long nodal sets.
#include <iostream>

#include <CLI11.hpp>

#include "mgraph_app/commands.hpp"

int main(int argc, char** argv)
{
    using namespace mgraph::app;
    ExperimentConfig cfg;

    CLI::App app{"Minimal graphs over the unit disk: seed promotion, nodal sets, validation"};
    app.set_help_flag("--help", "print this help and exit");
    app.set_config("--config", "", "key = value file; command-line flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--h", cfg.h, "grid spacing")->capture_default_str();
    app.add_option("--epsilon", cfg.epsilon, "smallness parameter of the promotion")->capture_default_str();
    app.add_option("--seed", cfg.seed, "stripe:<k|pi>, rezm:<m> or curve")->capture_default_str();
    app.add_option("--curve", cfg.curve, "built-in curve (segment, arc, circle-arc, circle) or curve file")
        ->capture_default_str();
    app.add_option("--degree", cfg.degree, "harmonic polynomial degree of the Cauchy fit")->capture_default_str();
    app.add_option("--target-c", cfg.target_c, "nodal length to exceed in demo-theorem")->capture_default_str();
    app.add_option("--epsilons", cfg.epsilons, "epsilon values for sweep-epsilon")->delimiter(',')->capture_default_str();
    app.add_option("--poisson-tol", cfg.poisson_tol, "relative residual of each linear solve")->capture_default_str();
    app.add_option("--stop-tol", cfg.stop_tol, "stop once ||u_{j+1} - u_j||_C2 falls below this")
        ->capture_default_str();
    app.add_option("--max-iters", cfg.max_iters, "Picard iteration cap")->capture_default_str();
    app.add_option("--neighborhood", cfg.neighborhood, "tube radius around the curve in level, in units of h")
        ->capture_default_str();
    app.add_option("--out", cfg.out, "output directory")->capture_default_str();
    app.add_flag("--strict", cfg.strict, "turn failed checks into exit code 1");

    auto* validate = app.add_subcommand("validate", "manufactured-solution checks of every operator");
    auto* demo = app.add_subcommand("demo-theorem", "minimal graph whose zero set is longer than --target-c");
    auto* level = app.add_subcommand("level", "minimal graph whose zero set follows --curve");
    auto* sweep = app.add_subcommand("sweep-epsilon", "contraction and deviation scaling over --epsilons");
    auto* solve = app.add_subcommand("solve", "single promotion of --seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kConfigError;
    }

    return guarded(
        [&] {
            if (validate->parsed()) {
                return cmd_validate(cfg, std::cout);
            }
            if (demo->parsed()) {
                return cmd_demo_theorem(cfg, std::cout);
            }
            if (level->parsed()) {
                return cmd_level(cfg, std::cout);
            }
            if (sweep->parsed()) {
                return cmd_sweep_epsilon(cfg, std::cout);
            }
            (void)solve;
            return cmd_solve(cfg, std::cout);
        },
        std::cerr);
}
