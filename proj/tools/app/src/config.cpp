#include "mgraph_app/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "mgraph/error.hpp"
#include "mgraph/harmonic.hpp"

namespace mgraph::app {

std::string format_number(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

void require(bool ok, const std::string& key, const std::string& message)
{
    if (!ok) {
        throw InvalidParameter(key + ": " + message);
    }
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void ExperimentConfig::validate() const
{
    require(finite_positive(h) && h <= 0.5, "h", "grid spacing must lie in (0, 0.5], got " + format_number(h));
    require(finite_positive(epsilon), "epsilon", "must be positive, got " + format_number(epsilon));
    require(!epsilons.empty(), "epsilons", "the sweep needs at least one value");
    for (const double e : epsilons) {
        require(finite_positive(e), "epsilons", "every value must be positive, got " + format_number(e));
    }
    require(poisson_tol > 0.0 && poisson_tol <= 1e-2, "poisson_tol",
            format_number(poisson_tol) +
                " is outside (0, 1e-2]; the linear solves would be too loose for second-order convergence");
    require(finite_positive(stop_tol), "stop_tol", "must be positive, got " + format_number(stop_tol));
    require(max_iters >= 1, "max_iters", "must be at least 1");
    require(degree >= 1, "degree", "must be at least 1");
    require(std::isfinite(target_c) && target_c >= 0.0, "target_c", "must be a finite non-negative length");
    require(finite_positive(neighborhood), "neighborhood", "must be positive");
    require(!out.empty(), "out", "output directory must not be empty");
    if (seed != "curve") {
        try {
            mgraph::validate(parse_seed(seed));
        } catch (const Error& e) {
            throw InvalidParameter(std::string("seed: ") + e.what());
        }
    }
}

PicardConfig ExperimentConfig::picard(double eps) const
{
    PicardConfig cfg;
    cfg.epsilon = eps;
    cfg.stop_tol = stop_tol;
    cfg.max_iters = max_iters;
    cfg.poisson_tol = poisson_tol;
    return cfg;
}

std::string ExperimentConfig::to_ini() const
{
    std::ostringstream os;
    const auto quoted = [](const std::string& s) { return "\"" + s + "\""; };
    os << "# effective configuration; rerun with --config <this file>\n";
    os << "h = " << format_number(h) << '\n';
    os << "epsilon = " << format_number(epsilon) << '\n';
    os << "seed = " << quoted(seed) << '\n';
    os << "curve = " << quoted(curve) << '\n';
    os << "degree = " << degree << '\n';
    os << "target-c = " << format_number(target_c) << '\n';
    os << "epsilons = [";
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
        os << (k ? ", " : "") << format_number(epsilons[k]);
    }
    os << "]\n";
    os << "poisson-tol = " << format_number(poisson_tol) << '\n';
    os << "stop-tol = " << format_number(stop_tol) << '\n';
    os << "max-iters = " << max_iters << '\n';
    os << "neighborhood = " << format_number(neighborhood) << '\n';
    os << "out = " << quoted(out) << '\n';
    os << "strict = " << (strict ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace mgraph::app
