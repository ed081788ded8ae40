#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxface/configuration.hpp"
#include "maxface/pole_function.hpp"
#include "maxface/singularity.hpp"

namespace maxface {

/// polynomial(z) + simple-pole part; polynomial[k] multiplies z^k.
struct RationalFunction {
    SimplePoleFunction poles;
    std::vector<Complex> polynomial;

    Complex operator()(Complex z, const TolerancePolicy& tol = {}) const;
    Complex derivative(Complex z, const TolerancePolicy& tol = {}) const;
};

struct DivisorPoint {
    Complex point;
    int order = 1;
};

/// Finite points only; anything in `punctures` is excluded from the check.
struct DivisorDeclaration {
    std::vector<DivisorPoint> g_zeros;
    std::vector<DivisorPoint> g_poles;
    std::vector<DivisorPoint> dh_zeros;
    std::vector<Complex> punctures;
};

/// Gauss map g and height differential dh = dh_dz(z) dz.
struct WeierstrassData {
    RationalFunction g;
    RationalFunction dh_dz;
    std::optional<DivisorDeclaration> divisors;
};

/// A point of E^3_1; x3 is the timelike coordinate.
struct SpacePoint {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

struct QuadratureSettings {
    double abs_tol = 1e-10;  ///< per segment
    int max_depth = 40;
};

/// Re of the cumulative integral of (1/2 (1/g + g), i/2 (1/g - g), 1) dh along the
/// polyline; one output per vertex, the first one at the origin.
std::vector<SpacePoint> integrate_immersion(const WeierstrassData& data, std::span<const Complex> path,
                                            const QuadratureSettings& quad = {}, const TolerancePolicy& tol = {});

struct PeriodResidual {
    Complex horizontal;  ///< int g^{-1} dh + conj(int g dh)
    double vertical = 0.0;  ///< Re int dh
};

PeriodResidual period_residual(const WeierstrassData& data, std::span<const Complex> loop,
                               const QuadratureSettings& quad = {}, const TolerancePolicy& tol = {});

/// True when |g| differs from 1 somewhere on the sample set.
bool satisfies_regularity(const WeierstrassData& data, std::span<const Complex> samples, double tol = 1e-12);

struct DivisorReport {
    bool identity_holds = true;
    bool spot_checks_pass = true;
    std::vector<Complex> offending_points;
    std::vector<std::string> problems;

    bool pass() const { return identity_holds && spot_checks_pass; }
};

/// Checks (g)_0 - (g)_inf = (dh)_0 on the declared lists and spot-checks the
/// declared vanishing orders numerically. No root finding.
DivisorReport verify_divisor_condition(const WeierstrassData& data);

struct SphereCentralData {
    int k = 0;
    double t = 0.0;
    SimplePoleFunction g_k;
    std::vector<Complex> a_points;  ///< a_{k,i}: anchors of necks (k, i) on sphere k
    std::vector<Complex> b_points;  ///< b_{k-1,i}: anchors of necks (k-1, i) on sphere k
    std::vector<double> alpha;
    std::vector<double> beta;
    /// Gauss map is t g_k on even spheres and 1/(t g_k) on odd ones.
    bool even = true;

    Complex gauss_value(Complex z, const TolerancePolicy& tol = {}) const;
};

SphereCentralData central_sphere_data(const PeriodicConfiguration& config, int k, double t);

struct WaistCurve {
    NeckId neck;
    double t = 0.0;
    Complex anchor;
    std::vector<Complex> points;  ///< closed: back() == front()
    double mean_radius = 0.0;
    double max_diameter = 0.0;
};

/// Leading-order singular curve |g_k| = 1/t around the anchor a_{k,i}, traced
/// ray by ray with bracketing and Newton refinement.
WaistCurve waist_curve(const PeriodicConfiguration& config, NeckId neck, double t = 0.05, int rays = 256);

/// Closed polyline with `vertices` corners on a circle (back() == front()).
std::vector<Complex> circle_polyline(Complex center, double radius, int vertices);

}  // namespace maxface
