#include "mgraph/harmonic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>

#include "mgraph/error.hpp"

namespace mgraph {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::complex<double> ipow(std::complex<double> z, int m)
{
    std::complex<double> out{1.0, 0.0};
    for (int i = 0; i < m; ++i) {
        out *= z;
    }
    return out;
}

// Values of 1, Re z, Im z, ..., Re z^M, Im z^M and the gradients of each.
struct BasisRow {
    std::vector<double> value;
    std::vector<Point2> grad;
};

BasisRow basis_row(Point2 p, int degree)
{
    BasisRow row;
    const std::size_t n = static_cast<std::size_t>(2 * degree + 1);
    row.value.resize(n);
    row.grad.resize(n);
    row.value[0] = 1.0;
    row.grad[0] = {0.0, 0.0};
    const std::complex<double> z{p.x, p.y};
    std::complex<double> prev{1.0, 0.0};  // z^{m-1}
    for (int m = 1; m <= degree; ++m) {
        const std::complex<double> cur = prev * z;
        // d/dz z^m = m z^{m-1}; Cauchy-Riemann gives the real gradients.
        row.value[2 * m - 1] = cur.real();
        row.value[2 * m] = cur.imag();
        row.grad[2 * m - 1] = {m * prev.real(), -m * prev.imag()};
        row.grad[2 * m] = {m * prev.imag(), m * prev.real()};
        prev = cur;
    }
    return row;
}

}  // namespace

void validate(const HarmonicSeed& seed)
{
    std::visit(Overloaded{
                   [](const StripeSinCosh& s) {
                       if (!(s.frequency > 0.0) || !std::isfinite(s.frequency)) {
                           throw InvalidParameter("stripe frequency must be positive");
                       }
                   },
                   [](const HarmonicPolynomialReZm& s) {
                       if (s.degree < 0) {
                           throw InvalidParameter("Re(z^m) degree must be non-negative");
                       }
                   },
                   [](const PolynomialExpansion& s) {
                       if (s.cos_coeffs.size() != s.sin_coeffs.size()) {
                           throw InvalidParameter("expansion needs as many sine as cosine coefficients");
                       }
                   },
               },
               seed);
}

double evaluate(const HarmonicSeed& seed, Point2 p)
{
    return std::visit(Overloaded{
                          [p](const StripeSinCosh& s) {
                              return std::sin(s.frequency * p.x) * std::cosh(s.frequency * p.y);
                          },
                          [p](const HarmonicPolynomialReZm& s) { return ipow({p.x, p.y}, s.degree).real(); },
                          [p](const PolynomialExpansion& s) {
                              const BasisRow row = basis_row(p, s.degree());
                              double v = s.a0;
                              for (int m = 1; m <= s.degree(); ++m) {
                                  v += s.cos_coeffs[m - 1] * row.value[2 * m - 1] +
                                       s.sin_coeffs[m - 1] * row.value[2 * m];
                              }
                              return v;
                          },
                      },
                      seed);
}

Point2 evaluate_gradient(const HarmonicSeed& seed, Point2 p)
{
    return std::visit(Overloaded{
                          [p](const StripeSinCosh& s) {
                              const double k = s.frequency;
                              return Point2{k * std::cos(k * p.x) * std::cosh(k * p.y),
                                            k * std::sin(k * p.x) * std::sinh(k * p.y)};
                          },
                          [p](const HarmonicPolynomialReZm& s) {
                              if (s.degree == 0) {
                                  return Point2{0.0, 0.0};
                              }
                              const auto d = static_cast<double>(s.degree) * ipow({p.x, p.y}, s.degree - 1);
                              return Point2{d.real(), -d.imag()};
                          },
                          [p](const PolynomialExpansion& s) {
                              const BasisRow row = basis_row(p, s.degree());
                              Point2 g{0.0, 0.0};
                              for (int m = 1; m <= s.degree(); ++m) {
                                  g = g + s.cos_coeffs[m - 1] * row.grad[2 * m - 1] +
                                      s.sin_coeffs[m - 1] * row.grad[2 * m];
                              }
                              return g;
                          },
                      },
                      seed);
}

ScalarField sample(const HarmonicSeed& seed, GridPtr grid)
{
    validate(seed);
    return ScalarField::sample(std::move(grid), [&seed](Point2 p) { return evaluate(seed, p); });
}

int nodal_line_count(const StripeSinCosh& seed)
{
    validate(seed);
    int count = 1;
    for (int j = 1; j * std::numbers::pi / seed.frequency < 1.0; ++j) {
        count += 2;
    }
    return count;
}

double predicted_nodal_length(const StripeSinCosh& seed)
{
    validate(seed);
    double length = 2.0;
    for (int j = 1;; ++j) {
        const double x = j * std::numbers::pi / seed.frequency;
        if (x >= 1.0) {
            break;
        }
        length += 2.0 * 2.0 * std::sqrt(1.0 - x * x);
    }
    return length;
}

double verify_harmonicity(const HarmonicSeed& seed, GridPtr grid)
{
    return sup_norm(laplacian(sample(seed, std::move(grid))), NodeSet::Interior);
}

CauchyFit fit_cauchy_data(const CurveSpec& curve, int degree, const FitOptions& options)
{
    if (degree < 1) {
        throw InvalidParameter("fit degree must be at least 1");
    }
    const int unknowns = 2 * degree + 1;
    if (curve.collocation_count() < 4 * unknowns) {
        throw InvalidParameter("need at least " + std::to_string(4 * unknowns) + " collocation points for degree " +
                               std::to_string(degree));
    }

    const auto ts = curve.collocation_parameters();
    const Eigen::Index rows = static_cast<Eigen::Index>(2 * ts.size());
    Eigen::MatrixXd a(rows, unknowns);
    Eigen::VectorXd b(rows);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Point2 p = curve.point(ts[i]);
        const Point2 nu = curve.normal(ts[i]);
        const BasisRow row = basis_row(p, degree);
        const auto r = static_cast<Eigen::Index>(2 * i);
        for (int c = 0; c < unknowns; ++c) {
            a(r, c) = row.value[c];
            a(r + 1, c) = dot(row.grad[c], nu);
        }
        b(r) = 0.0;
        b(r + 1) = 1.0;
    }

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma(0);
    const double sigma_min = sigma(sigma.size() - 1);
    const double condition =
        sigma_min > 0.0 ? sigma_max / sigma_min : std::numeric_limits<double>::infinity();
    if (!(sigma_max > 0.0) || sigma_min <= 1e-12 * sigma_max) {
        throw IllConditionedFit("collocation matrix is rank deficient (condition " + std::to_string(condition) +
                                    "); check for repeated or degenerate curve points",
                                condition);
    }

    const double ridge = options.ridge.value_or(1e-10 * a.colwise().squaredNorm().maxCoeff());
    if (!(ridge >= 0.0)) {
        throw InvalidParameter("ridge weight must be non-negative");
    }
    Eigen::MatrixXd augmented(rows + unknowns, unknowns);
    augmented.topRows(rows) = a;
    augmented.bottomRows(unknowns) = std::sqrt(ridge) * Eigen::MatrixXd::Identity(unknowns, unknowns);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows + unknowns);
    rhs.head(rows) = b;
    const Eigen::VectorXd coeffs = augmented.householderQr().solve(rhs);

    CauchyFit fit;
    fit.seed.a0 = coeffs(0);
    for (int m = 1; m <= degree; ++m) {
        fit.seed.cos_coeffs.push_back(coeffs(2 * m - 1));
        fit.seed.sin_coeffs.push_back(coeffs(2 * m));
    }

    const Eigen::VectorXd residual = a * coeffs - b;
    CauchyFitReport& rep = fit.report;
    for (Eigen::Index r = 0; r < rows; r += 2) {
        rep.residual_value = std::max(rep.residual_value, std::abs(residual(r)));
        rep.residual_normal = std::max(rep.residual_normal, std::abs(residual(r + 1)));
    }
    rep.misfit = residual.squaredNorm();
    rep.objective = rep.misfit + ridge * coeffs.squaredNorm();
    rep.condition = condition;
    rep.ridge = ridge;
    rep.degree = degree;
    rep.collocation_count = curve.collocation_count();
    return fit;
}

HarmonicSeed parse_seed(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw InvalidParameter("seed must look like 'stripe:<k>' or 'rezm:<m>', got '" + std::string(text) + "'");
    }
    const std::string_view family = text.substr(0, colon);
    const std::string arg(text.substr(colon + 1));
    if (family == "stripe") {
        double k = 0.0;
        if (arg == "pi") {
            k = std::numbers::pi;
        } else {
            const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
            if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
                throw InvalidParameter("bad stripe frequency '" + arg + "'");
            }
        }
        HarmonicSeed seed = StripeSinCosh{k};
        validate(seed);
        return seed;
    }
    if (family == "rezm") {
        int m = 0;
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), m);
        if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
            throw InvalidParameter("bad Re(z^m) degree '" + arg + "'");
        }
        HarmonicSeed seed = HarmonicPolynomialReZm{m};
        validate(seed);
        return seed;
    }
    throw InvalidParameter("unknown seed family '" + std::string(family) + "'");
}

std::string describe(const HarmonicSeed& seed)
{
    return std::visit(Overloaded{
                          [](const StripeSinCosh& s) {
                              char buf[64];
                              std::snprintf(buf, sizeof buf, "stripe:%.17g", s.frequency);
                              return std::string(buf);
                          },
                          [](const HarmonicPolynomialReZm& s) { return "rezm:" + std::to_string(s.degree); },
                          [](const PolynomialExpansion& s) { return "expansion:" + std::to_string(s.degree()); },
                      },
                      seed);
}

}  // namespace mgraph
