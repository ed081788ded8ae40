#include "maxface/weierstrass.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

namespace maxface {

Complex RationalFunction::operator()(Complex z, const TolerancePolicy& tol) const {
    Complex acc{};
    for (auto it = polynomial.rbegin(); it != polynomial.rend(); ++it) acc = acc * z + *it;
    return acc + poles.evaluate(z, tol);
}

Complex RationalFunction::derivative(Complex z, const TolerancePolicy& tol) const {
    Complex acc{};
    for (std::size_t k = polynomial.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * polynomial[k];
    return acc + poles.derivative(z, tol);
}

namespace {

// (int g^{-1} dh, int g dh, int dh) accumulated together
struct Triple {
    std::array<Complex, 3> v{};

    Triple() = default;
    Triple(int) {}
    Triple(Complex a, Complex b, Complex c) : v{a, b, c} {}

    Triple& operator+=(const Triple& o) {
        for (int j = 0; j < 3; ++j) v[j] += o.v[j];
        return *this;
    }
    friend Triple operator+(Triple a, const Triple& b) { return a += b; }
    friend Triple operator-(Triple a, const Triple& b) {
        for (int j = 0; j < 3; ++j) a.v[j] -= b.v[j];
        return a;
    }
    friend Triple operator-(Triple a) {
        for (auto& x : a.v) x = -x;
        return a;
    }
    friend Triple operator*(Triple a, double s) {
        for (auto& x : a.v) x *= s;
        return a;
    }
    friend Triple operator*(double s, Triple a) { return a * s; }
    friend double abs(const Triple& a) { return std::max({std::abs(a.v[0]), std::abs(a.v[1]), std::abs(a.v[2])}); }
};

double distance_to_segment(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    const double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + s * d));
}

void check_segment(const WeierstrassData& data, Complex a, Complex b, const TolerancePolicy& tol) {
    auto check = [&](const SimplePoleFunction& f, const char* what) {
        for (const auto& p : f.poles()) {
            if (distance_to_segment(p.location, a, b) <= tol.zero_abs) {
                throw DomainError(std::string("path passes through a pole of ") + what);
            }
        }
    };
    check(data.g.poles, "g");
    check(data.dh_dz.poles, "dh");
}

Triple integrate_segment(const WeierstrassData& data, Complex a, Complex b, const QuadratureSettings& quad,
                         const TolerancePolicy& tol) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    const Complex d = b - a;
    auto f = [&](double s) -> Triple {
        const Complex z = a + s * d;
        const Complex g = data.g(z, tol);
        const Complex dh = data.dh_dz(z, tol) * d;
        const Triple out{dh / g, g * dh, dh};
        for (auto x : out.v) {
            if (!is_finite(x)) throw DomainError("integrand is singular on the path");
        }
        return out;
    };
    // bisection on [lo, hi] with an absolute error budget
    auto adapt = [&](auto&& self, double lo, double hi, double budget, int depth) -> Triple {
        double err = 0.0;
        const Triple est = GK::integrate(f, lo, hi, 0, 0.0, &err);
        if (err <= budget || depth >= quad.max_depth) return est;
        const double mid = 0.5 * (lo + hi);
        return self(self, lo, mid, 0.5 * budget, depth + 1) + self(self, mid, hi, 0.5 * budget, depth + 1);
    };
    return adapt(adapt, 0.0, 1.0, quad.abs_tol, 0);
}

void require_path(std::span<const Complex> path) {
    if (path.size() < 2) throw UsageError("a path needs at least two vertices");
}

}  // namespace

std::vector<SpacePoint> integrate_immersion(const WeierstrassData& data, std::span<const Complex> path,
                                            const QuadratureSettings& quad, const TolerancePolicy& tol) {
    require_path(path);
    std::vector<SpacePoint> out{SpacePoint{}};
    Triple acc;
    for (std::size_t s = 1; s < path.size(); ++s) {
        check_segment(data, path[s - 1], path[s], tol);
        acc += integrate_segment(data, path[s - 1], path[s], quad, tol);
        const Complex I1 = acc.v[0], I2 = acc.v[1], I3 = acc.v[2];
        out.push_back({(0.5 * (I1 + I2)).real(), (0.5 * kI * (I1 - I2)).real(), I3.real()});
    }
    return out;
}

PeriodResidual period_residual(const WeierstrassData& data, std::span<const Complex> loop,
                               const QuadratureSettings& quad, const TolerancePolicy& tol) {
    require_path(loop);
    if (std::abs(loop.front() - loop.back()) > tol.zero_abs) throw UsageError("loop is not closed");
    Triple acc;
    for (std::size_t s = 1; s < loop.size(); ++s) {
        check_segment(data, loop[s - 1], loop[s], tol);
        acc += integrate_segment(data, loop[s - 1], loop[s], quad, tol);
    }
    return {acc.v[0] + std::conj(acc.v[1]), acc.v[2].real()};
}

bool satisfies_regularity(const WeierstrassData& data, std::span<const Complex> samples, double tol) {
    return std::any_of(samples.begin(), samples.end(), [&](Complex z) {
        try {
            return std::abs(std::abs(data.g(z)) - 1.0) > tol;
        } catch (const DomainError&) {
            return true;  // a pole of g is certainly off the unit circle
        }
    });
}

namespace {

// Empirical vanishing order of f at z0 from two shrinking circles.
double estimate_order(const RationalFunction& f, Complex z0) {
    const double r1 = 1e-3, r2 = 1e-4;
    double acc = 0.0;
    const int dirs = 4;
    for (int d = 0; d < dirs; ++d) {
        const Complex e = std::polar(1.0, 0.3 + d * std::numbers::pi / 2);
        acc += std::log(std::abs(f(z0 + r1 * e)) / std::abs(f(z0 + r2 * e))) / std::log(r1 / r2);
    }
    return acc / dirs;
}

}  // namespace

DivisorReport verify_divisor_condition(const WeierstrassData& data) {
    if (!data.divisors) throw UsageError("divisor check needs declared zeros and poles");
    const DivisorDeclaration& decl = *data.divisors;
    DivisorReport rep;

    auto excluded = [&](Complex z) {
        return std::any_of(decl.punctures.begin(), decl.punctures.end(),
                           [&](Complex p) { return std::abs(p - z) <= 1e-9; });
    };
    // signed order of (g)_0 - (g)_inf - (dh)_0 per point
    std::vector<std::pair<Complex, int>> balance;
    auto add = [&](Complex z, int order) {
        if (excluded(z)) return;
        for (auto& [p, o] : balance) {
            if (std::abs(p - z) <= 1e-9) {
                o += order;
                return;
            }
        }
        balance.emplace_back(z, order);
    };
    for (const auto& d : decl.g_zeros) add(d.point, d.order);
    for (const auto& d : decl.g_poles) add(d.point, -d.order);
    for (const auto& d : decl.dh_zeros) add(d.point, -d.order);
    for (const auto& [p, o] : balance) {
        if (o != 0) {
            rep.identity_holds = false;
            rep.offending_points.push_back(p);
            rep.problems.push_back("divisor identity off by " + std::to_string(o) + " at (" + std::to_string(p.real()) +
                                   "," + std::to_string(p.imag()) + ")");
        }
    }

    auto spot = [&](const RationalFunction& f, const DivisorPoint& d, int sign, const char* what) {
        if (excluded(d.point)) return;
        const double est = estimate_order(f, d.point);
        if (!std::isfinite(est) || std::abs(est - sign * d.order) > 0.1) {
            rep.spot_checks_pass = false;
            rep.offending_points.push_back(d.point);
            rep.problems.push_back(std::string(what) + " order estimate " + std::to_string(est) + " != declared " +
                                   std::to_string(sign * d.order));
        }
    };
    for (const auto& d : decl.dh_zeros) spot(data.dh_dz, d, 1, "dh zero");
    for (const auto& d : decl.g_zeros) spot(data.g, d, 1, "g zero");
    for (const auto& d : decl.g_poles) spot(data.g, d, -1, "g pole");
    return rep;
}

Complex SphereCentralData::gauss_value(Complex z, const TolerancePolicy& tol) const {
    const Complex v = t * g_k.evaluate(z, tol);
    return even ? v : 1.0 / v;
}

SphereCentralData central_sphere_data(const PeriodicConfiguration& config, int k, double t) {
    if (!(t > 0.0 && t < 1.0)) throw UsageError("t must lie in (0, 1)");
    const bool odd = (k % 2) != 0;
    auto conj_k = [&](Complex z) { return odd ? std::conj(z) : z; };
    const Layer lower = config.layer_at(k - 1);
    const Layer upper = config.layer_at(k);

    SphereCentralData out;
    out.k = k;
    out.t = t;
    out.even = !odd;
    std::vector<Pole> poles;
    for (auto p : lower.points()) {
        out.b_points.push_back(conj_k(p - lower[0]));
        out.beta.push_back(lower.weight());
        poles.push_back({out.b_points.back(), Complex{out.beta.back(), 0.0}});
    }
    for (auto p : upper.points()) {
        out.a_points.push_back(conj_k(p - lower[0]));
        out.alpha.push_back(upper.weight());
        poles.push_back({out.a_points.back(), Complex{-out.alpha.back(), 0.0}});
    }
    out.g_k = SimplePoleFunction(std::move(poles));
    return out;
}

WaistCurve waist_curve(const PeriodicConfiguration& config, NeckId neck, double t, int rays) {
    if (rays < 16) throw UsageError("waist curve needs at least 16 rays");
    if (!(t > 0.0 && t < 1.0)) throw UsageError("t must lie in (0, 1)");
    if (neck.i < 1 || neck.i > config.neck_count(neck.k)) throw UsageError("neck does not exist");
    const SphereCentralData sphere = central_sphere_data(config, neck.k, t);
    const Complex anchor = sphere.a_points[static_cast<std::size_t>(neck.i - 1)];
    const double alpha = sphere.alpha[static_cast<std::size_t>(neck.i - 1)];

    double clearance = std::numeric_limits<double>::infinity();
    for (const auto& p : sphere.g_k.poles()) {
        const double d = std::abs(p.location - anchor);
        if (d > 0.0) clearance = std::min(clearance, d);
    }
    const double rho_max = 0.5 * clearance;
    const double guess = alpha * t;

    WaistCurve out;
    out.neck = neck;
    out.t = t;
    out.anchor = anchor;
    for (int j = 0; j < rays; ++j) {
        const Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * j / rays);
        // log(t |g_k|) decreases through zero as the ray leaves the anchor
        auto f = [&](double rho) {
            const Complex z = anchor + rho * dir;
            const Complex g = sphere.g_k.evaluate(z);
            const Complex dg = sphere.g_k.derivative(z);
            return std::pair{std::log(t * std::abs(g)), (dg / g * dir).real()};
        };
        double lo = 0.25 * guess;
        double hi = 2.0 * guess;
        while (f(lo).first <= 0.0 && lo > 1e-12 * guess) lo *= 0.5;
        while (f(hi).first >= 0.0) {
            hi *= 2.0;
            if (hi > rho_max) {
                throw DomainError("no bracket on ray " + std::to_string(j) + "; t is too large for this neck");
            }
        }
        std::uintmax_t iters = 100;
        const double rho = boost::math::tools::newton_raphson_iterate(f, 0.5 * (lo + hi), lo, hi, 50, iters);
        out.points.push_back(anchor + rho * dir);
        out.mean_radius += rho / rays;
    }
    for (std::size_t a = 0; a < out.points.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) out.max_diameter = std::max(out.max_diameter, std::abs(out.points[a] - out.points[b]));
    out.points.push_back(out.points.front());
    return out;
}

std::vector<Complex> circle_polyline(Complex center, double radius, int vertices) {
    if (vertices < 3) throw UsageError("a circle polyline needs at least 3 vertices");
    std::vector<Complex> out;
    for (int j = 0; j < vertices; ++j) out.push_back(center + std::polar(radius, 2.0 * std::numbers::pi * j / vertices));
    out.push_back(out.front());
    return out;
}

}  // namespace maxface
