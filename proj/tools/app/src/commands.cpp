#include "mgraph_app/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mgraph/error.hpp"
#include "mgraph/field_io.hpp"
#include "mgraph/report_io.hpp"
#include "mgraph_app/validation.hpp"

namespace mgraph::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path prepare_output(const ExperimentConfig& cfg)
{
    const fs::path dir(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw InvalidParameter("out: cannot create " + dir.string() + ": " + ec.message());
    }
    std::ofstream(dir / "config.ini") << cfg.to_ini();
    return dir;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw InvalidParameter("cannot write " + path.string());
    }
    os << text;
}

std::string iteration_log(const IterationReport& report)
{
    std::ostringstream os;
    write_iteration_log(os, report);
    return os.str();
}

std::string zero_set_text(const LevelSet& ls)
{
    std::ostringstream os;
    write_level_set_text(os, ls);
    return os.str();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json checks_json(const std::vector<Check>& checks)
{
    json out = json::object();
    for (const auto& c : checks) {
        out[c.name] = json{{"measured", c.measured}, {"criterion", c.criterion}, {"passed", c.passed}};
    }
    return out;
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void print_checks(std::ostream& out, const std::vector<Check>& checks)
{
    for (const auto& c : checks) {
        out << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << " = " << fmt(c.measured) << "  ("
            << c.criterion << ")\n";
    }
}

int verdict(const ExperimentConfig& cfg, const std::vector<Check>& checks, std::ostream& out)
{
    if (all_passed(checks)) {
        out << "all checks passed\n";
        return kSuccess;
    }
    out << (cfg.strict ? "check failed (strict)\n" : "check failed (reported only; use --strict to fail the run)\n");
    return cfg.strict ? kAssertionFailed : kSuccess;
}

void warn_epsilon(double eps, std::ostream& out)
{
    if (eps > PicardConfig::kRecommendedMaxEpsilon) {
        out << "note: epsilon " << fmt(eps) << " is above the recommended " << fmt(PicardConfig::kRecommendedMaxEpsilon)
            << "; the iteration may stop contracting\n";
    }
}

// Writes the partial log of a failed promotion before reporting it.
template <class F>
auto with_contraction_log(const fs::path& dir, double eps, F&& body) -> decltype(body())
{
    try {
        return body();
    } catch (const ContractionFailure& e) {
        write_text(dir / "iterations.jsonl", iteration_log(e.report()));
        throw ContractionFailure(std::string(e.what()) + "; try a smaller --epsilon than " + format_number(eps) + " or a larger --max-iters",
                                 e.report());
    }
}

json zero_set_json(const LevelSet& ls) { return json::parse(level_set_summary_json(ls)); }

}  // namespace

int guarded(const std::function<int()>& command, std::ostream& err)
{
    try {
        return command();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.numerical() ? kNumericalError : kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalError;
    }
}

int cmd_validate(const ExperimentConfig& cfg, std::ostream& out)
{
    cfg.validate();
    const fs::path dir = prepare_output(cfg);
    const ValidationReport report = run_validation(cfg);

    json studies = json::array();
    out << "convergence orders (sup-norm error against closed forms):\n";
    for (const auto& s : report.studies) {
        out << "  " << s.name << " [" << s.nodes << " nodes]:";
        for (std::size_t k = 0; k < s.h.size(); ++k) {
            out << "  h=" << fmt(s.h[k]) << " err=" << fmt(s.errors[k]);
        }
        out << "  order=" << (s.order ? fmt(*s.order) : "n/a") << '\n';
        studies.push_back(json{{"name", s.name}, {"nodes", s.nodes}, {"h", s.h}, {"errors", s.errors},
                               {"order", optional_number(s.order)}});
    }
    print_checks(out, report.checks);
    const json summary{{"command", "validate"},
                       {"poisson_tol", cfg.poisson_tol},
                       {"studies", studies},
                       {"checks", checks_json(report.checks)},
                       {"passed", report.passed()}};
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    if (!report.passed()) {
        out << "validation failed\n";
        return kAssertionFailed;
    }
    out << "validation passed\n";
    return kSuccess;
}

std::string demo_summary_json(const ExperimentConfig& cfg, const DemoResult& r)
{
    const json summary{{"command", "demo-theorem"},
                       {"h", cfg.h},
                       {"epsilon", cfg.epsilon},
                       {"target_c", cfg.target_c},
                       {"frequency", r.frequency},
                       {"predicted_length", r.predicted_length},
                       {"zero_set", zero_set_json(r.zero_set)},
                       {"margin_scaled", r.run.lambda * r.zero_set.min_gradient},
                       {"area", r.area},
                       {"area_bound", r.area_bound},
                       {"picard", json::parse(iteration_summary_json(r.run.report))},
                       {"checks", checks_json(r.checks)},
                       {"passed", all_passed(r.checks)}};
    return summary.dump(2) + "\n";
}

int cmd_demo_theorem(const ExperimentConfig& cfg, std::ostream& out)
{
    cfg.validate();
    warn_epsilon(cfg.epsilon, out);
    const fs::path dir = prepare_output(cfg);
    const DemoResult r = with_contraction_log(dir, cfg.epsilon, [&] { return run_demo(cfg); });

    write_text(dir / "iterations.jsonl", iteration_log(r.run.report));
    write_text(dir / "zero_set.txt", zero_set_text(r.zero_set));
    write_text(dir / "summary.json", demo_summary_json(cfg, r));

    out << "target length c = " << fmt(cfg.target_c) << ", stripe frequency k = " << fmt(r.frequency)
        << " (predicted nodal length " << fmt(r.predicted_length) << ")\n";
    out << "picard: " << r.run.report.iterations.size() << " iterations, mean contraction ratio "
        << (r.run.report.mean_ratio() ? fmt(*r.run.report.mean_ratio()) : "n/a") << '\n';
    out << "zero set: " << r.zero_set.polylines.size() << " chains, length " << fmt(r.zero_set.total_length)
        << ", area/pi " << fmt(r.area / std::numbers::pi) << '\n';
    print_checks(out, r.checks);
    return verdict(cfg, r.checks, out);
}

int cmd_level(const ExperimentConfig& cfg, std::ostream& out)
{
    cfg.validate();
    warn_epsilon(cfg.epsilon, out);
    const fs::path dir = prepare_output(cfg);
    const LevelResult r = with_contraction_log(dir, cfg.epsilon, [&] { return run_level(cfg); });

    write_text(dir / "iterations.jsonl", iteration_log(r.run.report));
    write_text(dir / "zero_set.txt", zero_set_text(r.zero_set));
    write_text(dir / "zero_set_near_curve.txt", zero_set_text(r.restricted));
    const CauchyFitReport& fit = r.fit.report;
    const json summary{{"command", "level"},
                       {"h", cfg.h},
                       {"epsilon", cfg.epsilon},
                       {"curve", cfg.curve},
                       {"degree", cfg.degree},
                       {"fit",
                        {{"residual_value", fit.residual_value},
                         {"residual_normal", fit.residual_normal},
                         {"misfit", fit.misfit},
                         {"condition", fit.condition},
                         {"ridge", fit.ridge},
                         {"collocation_count", fit.collocation_count}}},
                       {"tube_radius", r.tube_radius},
                       {"hausdorff", r.hausdorff},
                       {"margin_scaled", r.margin},
                       {"zero_set", zero_set_json(r.zero_set)},
                       {"zero_set_near_curve", zero_set_json(r.restricted)},
                       {"picard", json::parse(iteration_summary_json(r.run.report))},
                       {"checks", checks_json(r.checks)},
                       {"passed", all_passed(r.checks)}};
    write_text(dir / "summary.json", summary.dump(2) + "\n");

    out << "curve " << cfg.curve << ", degree " << cfg.degree << ": fit residuals value " << fmt(fit.residual_value)
        << ", normal " << fmt(fit.residual_normal) << ", condition " << fmt(fit.condition) << '\n';
    out << "hausdorff distance to curve within a tube of radius " << fmt(r.tube_radius) << ": " << fmt(r.hausdorff)
        << '\n';
    print_checks(out, r.checks);
    return verdict(cfg, r.checks, out);
}

std::string sweep_csv(const SweepResult& r)
{
    std::ostringstream os;
    os << "epsilon,rho_mean,deviation,shift,iterations\n";
    for (const auto& row : r.rows) {
        os << format_number(row.epsilon) << ',' << (row.rho_mean ? format_number(*row.rho_mean) : "n/a") << ','
           << format_number(row.deviation) << ',' << format_number(row.shift) << ',' << row.iterations << '\n';
    }
    return os.str();
}

int cmd_sweep_epsilon(const ExperimentConfig& cfg, std::ostream& out)
{
    cfg.validate();
    for (const double e : cfg.epsilons) {
        warn_epsilon(e, out);
    }
    const fs::path dir = prepare_output(cfg);
    const SweepResult r = run_sweep(cfg);

    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        write_text(dir / ("iterations_" + std::to_string(k) + ".jsonl"), iteration_log(r.rows[k].report));
    }
    const std::string csv = sweep_csv(r);
    write_text(dir / "sweep.csv", csv);
    const auto exponent = [](const std::optional<double>& e) { return e ? json(*e) : json("n/a"); };
    const json summary{{"command", "sweep-epsilon"},
                       {"h", cfg.h},
                       {"seed", cfg.seed},
                       {"epsilons", cfg.epsilons},
                       {"exponents",
                        {{"rho_mean", exponent(r.rho_exponent)},
                         {"deviation", exponent(r.deviation_exponent)},
                         {"shift", exponent(r.shift_exponent)}}}};
    write_text(dir / "summary.json", summary.dump(2) + "\n");

    out << csv;
    const auto show = [](const std::optional<double>& e) { return e ? fmt(*e) : std::string("n/a"); };
    out << "fitted exponents vs epsilon: rho_mean " << show(r.rho_exponent) << ", deviation "
        << show(r.deviation_exponent) << ", shift " << show(r.shift_exponent) << '\n';
    return kSuccess;
}

int cmd_solve(const ExperimentConfig& cfg, std::ostream& out)
{
    cfg.validate();
    warn_epsilon(cfg.epsilon, out);
    const fs::path dir = prepare_output(cfg);
    const SolveResult r = with_contraction_log(dir, cfg.epsilon, [&] { return run_solve(cfg); });

    write_text(dir / "iterations.jsonl", iteration_log(r.run.report));
    write_text(dir / "zero_set.txt", zero_set_text(r.zero_set));
    {
        std::ofstream os(dir / "field.txt", std::ios::binary);
        write_field_text(os, r.run.u);
    }
    const json summary{{"command", "solve"},
                       {"h", cfg.h},
                       {"epsilon", cfg.epsilon},
                       {"seed", cfg.seed},
                       {"area", r.area},
                       {"zero_set", zero_set_json(r.zero_set)},
                       {"picard", json::parse(iteration_summary_json(r.run.report))}};
    write_text(dir / "summary.json", summary.dump(2) + "\n");

    const IterationReport& rep = r.run.report;
    out << "picard: " << rep.iterations.size() << " iterations, gamma " << fmt(rep.gamma) << ", max ||u_j||_C2 "
        << fmt(rep.max_u_norm) << ", ||lambda u - v||_C0 " << fmt(rep.deviation_c0) << '\n';
    out << "zero set: " << r.zero_set.polylines.size() << " chains, length " << fmt(r.zero_set.total_length) << '\n';
    return kSuccess;
}

}  // namespace mgraph::app
