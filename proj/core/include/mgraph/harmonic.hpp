#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mgraph/curve.hpp"
#include "mgraph/grid.hpp"

namespace mgraph {

/// sin(k x) cosh(k y); its zero set in the disk is the family of chords x = j pi / k.
struct StripeSinCosh {
    double frequency;
};

/// Re((x + i y)^m) = r^m cos(m theta).
struct HarmonicPolynomialReZm {
    int degree;
};

/// a_0 + sum_{m=1..M} a_m r^m cos(m theta) + b_m r^m sin(m theta).
struct PolynomialExpansion {
    double a0{0.0};
    std::vector<double> cos_coeffs;  // a_1 .. a_M
    std::vector<double> sin_coeffs;  // b_1 .. b_M

    [[nodiscard]] int degree() const { return static_cast<int>(cos_coeffs.size()); }
};

using HarmonicSeed = std::variant<StripeSinCosh, HarmonicPolynomialReZm, PolynomialExpansion>;

/// Throws InvalidParameter for a non-positive frequency, negative degree or
/// mismatched coefficient arrays.
void validate(const HarmonicSeed& seed);

double evaluate(const HarmonicSeed& seed, Point2 p);
Point2 evaluate_gradient(const HarmonicSeed& seed, Point2 p);

/// Pointwise evaluation at every active node and every cut point of the grid.
ScalarField sample(const HarmonicSeed& seed, GridPtr grid);

/// Number of integers j with |j pi / k| < 1.
int nodal_line_count(const StripeSinCosh& seed);

/// Total length of the chords x = j pi / k inside the unit disk.
double predicted_nodal_length(const StripeSinCosh& seed);

/// Largest |laplacian(sample(seed))| over interior nodes.
double verify_harmonicity(const HarmonicSeed& seed, GridPtr grid);

struct FitOptions {
    /// Ridge weight; defaults to 1e-10 times the largest diagonal entry of A^T A.
    std::optional<double> ridge;
};

struct CauchyFitReport {
    double residual_value{0.0};   // max |p| on collocation points
    double residual_normal{0.0};  // max |dp/dnu - 1| on collocation points
    double misfit{0.0};           // sum of squared residuals
    double objective{0.0};        // misfit + ridge * |coefficients|^2
    double condition{0.0};        // sigma_max / sigma_min of the collocation matrix
    double ridge{0.0};
    int degree{0};
    int collocation_count{0};
};

struct CauchyFit {
    PolynomialExpansion seed;
    CauchyFitReport report;
};

/// Least-squares harmonic polynomial of degree <= M that vanishes on the curve and
/// has unit normal derivative there, solved by Householder QR of the ridge-augmented
/// collocation system. Requires M >= 1 and at least 4(2M+1) collocation points.
/// Throws IllConditionedFit when the collocation matrix is numerically rank deficient.
CauchyFit fit_cauchy_data(const CurveSpec& curve, int degree, const FitOptions& options = {});

/// "stripe:<k>" (k a number or "pi"), "rezm:<m>".
HarmonicSeed parse_seed(std::string_view text);
std::string describe(const HarmonicSeed& seed);

}  // namespace mgraph
