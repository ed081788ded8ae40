#include "maxface/pole_function.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace maxface {

SimplePoleFunction::SimplePoleFunction(std::vector<Pole> poles, double min_separation) : poles_(std::move(poles)) {
    for (std::size_t i = 0; i < poles_.size(); ++i) {
        if (!is_finite(poles_[i].location) || !is_finite(poles_[i].coefficient)) {
            throw DomainError("pole data must be finite");
        }
        if (poles_[i].coefficient == Complex{}) {
            throw UsageError("pole " + std::to_string(i) + " has a zero coefficient");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(poles_[i].location - poles_[j].location) <= min_separation) {
                throw UsageError("poles " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
            }
        }
    }
}

const Pole& SimplePoleFunction::pole(int index) const {
    if (index < 0 || static_cast<std::size_t>(index) >= poles_.size()) {
        throw UsageError("pole index " + std::to_string(index) + " out of range");
    }
    return poles_[static_cast<std::size_t>(index)];
}

Complex SimplePoleFunction::evaluate(Complex z, const TolerancePolicy& tol) const {
    Complex acc{};
    for (const auto& p : poles_) {
        const Complex d = z - p.location;
        if (std::abs(d) <= tol.zero_abs) throw DomainError("evaluation at a pole");
        acc += p.coefficient / d;
    }
    return acc;
}

Complex SimplePoleFunction::derivative(Complex z, const TolerancePolicy& tol) const {
    Complex acc{};
    for (const auto& p : poles_) {
        const Complex d = z - p.location;
        if (std::abs(d) <= tol.zero_abs) throw DomainError("evaluation at a pole");
        acc -= p.coefficient / (d * d);
    }
    return acc;
}

SimplePoleFunction SimplePoleFunction::translated(Complex shift) const {
    std::vector<Pole> moved(poles_.begin(), poles_.end());
    for (auto& p : moved) p.location += shift;
    SimplePoleFunction out;
    out.poles_ = std::move(moved);
    return out;
}

Complex SimplePoleFunction::coefficient_sum() const {
    Complex acc{};
    for (const auto& p : poles_) acc += p.coefficient;
    return acc;
}

double SimplePoleFunction::min_pole_gap() const {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poles_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) gap = std::min(gap, std::abs(poles_[i].location - poles_[j].location));
    return gap;
}

LocalExpansion local_expansion(const SimplePoleFunction& f, int pole_index, int order) {
    if (order < 0) throw UsageError("expansion order must be >= 0");
    const Pole& centre = f.pole(pole_index);
    std::vector<Complex> coeffs(static_cast<std::size_t>(order) + 1, Complex{});
    const auto poles = f.poles();
    for (std::size_t j = 0; j < poles.size(); ++j) {
        if (static_cast<int>(j) == pole_index) continue;
        // c/(z-q) = -c/(q-p) * 1/(1 - w/(q-p)) with w = z - p
        const Complex inv = 1.0 / (poles[j].location - centre.location);
        Complex power = inv;
        for (int s = 0; s <= order; ++s) {
            coeffs[s] -= poles[j].coefficient * power;
            power *= inv;
        }
    }
    return {centre.coefficient, TruncatedSeries(centre.location, std::move(coeffs))};
}

namespace {

// Minimal complex arithmetic over an arbitrary real type; std::complex is
// only specified for the builtin floating types.
template <class Real>
struct BasicComplex {
    Real re{0};
    Real im{0};

    friend BasicComplex operator+(const BasicComplex& a, const BasicComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BasicComplex operator-(const BasicComplex& a, const BasicComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BasicComplex operator*(const BasicComplex& a, const BasicComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BasicComplex operator*(const Real& s, const BasicComplex& a) { return {s * a.re, s * a.im}; }
    BasicComplex reciprocal() const {
        const Real n = re * re + im * im;
        return {re / n, -im / n};
    }
    double magnitude() const {
        using std::sqrt;
        return static_cast<double>(sqrt(re * re + im * im));
    }
    Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

template <class Real>
ResidueValue residue_kernel(const SimplePoleFunction& f, int pole_index, int m) {
    using C = BasicComplex<Real>;
    const Pole& centre = f.pole(pole_index);
    const C c{Real(centre.coefficient.real()), Real(centre.coefficient.imag())};
    if (m == 1) return {centre.coefficient, std::abs(centre.coefficient)};

    const int order = m - 2;
    const auto n = static_cast<std::size_t>(order) + 1;

    // Regular part A(w) about the pole, in working precision.
    std::vector<C> regular(n);
    const auto poles = f.poles();
    for (std::size_t j = 0; j < poles.size(); ++j) {
        if (static_cast<int>(j) == pole_index) continue;
        const C d{Real(poles[j].location.real()) - Real(centre.location.real()),
                  Real(poles[j].location.imag()) - Real(centre.location.imag())};
        const C inv = d.reciprocal();
        const C cj{Real(poles[j].coefficient.real()), Real(poles[j].coefficient.imag())};
        C power = inv;
        for (std::size_t s = 0; s < n; ++s) {
            regular[s] = regular[s] - cj * power;
            power = power * inv;
        }
    }

    // powers of c: c^1 .. c^(m-1)
    std::vector<C> cpow(static_cast<std::size_t>(m));
    cpow[0] = C{Real(1), Real(0)};
    for (int e = 1; e < m; ++e) cpow[e] = cpow[e - 1] * c;

    std::vector<C> apow = regular;  // A^j, truncated at `order`
    C total{};
    double scale = 0.0;
    Real binom = Real(1);
    for (int j = 1; j <= m - 1; ++j) {
        binom = binom * Real(m - j + 1) / Real(j);
        if (j > 1) {
            std::vector<C> next(n);
            for (std::size_t s = 0; s < n; ++s) {
                C acc{};
                for (std::size_t t = 0; t <= s; ++t) acc = acc + apow[t] * regular[s - t];
                next[s] = acc;
            }
            apow = std::move(next);
        }
        const C term = binom * (cpow[static_cast<std::size_t>(m - j)] * apow[static_cast<std::size_t>(m - j - 1)]);
        scale = std::max(scale, term.magnitude());
        total = total + term;
    }
    return {total.to_complex(), scale};
}

std::mutex& mpfr_precision_mutex() {
    static std::mutex mu;
    return mu;
}

}  // namespace

ResidueValue residue_of_power_tracked(const SimplePoleFunction& f, int pole_index, int m,
                                      const ResidueOptions& options) {
    if (m < 1) throw UsageError("residue exponent must be >= 1");
    f.pole(pole_index);  // range check
    if (options.significand_bits <= 53) return residue_kernel<double>(f, pole_index, m);

    using boost::multiprecision::mpfr_float;
    const auto digits10 = static_cast<unsigned>(std::ceil(options.significand_bits * 0.30102999566398120)) + 1;
    std::lock_guard lock(mpfr_precision_mutex());
    const unsigned saved = mpfr_float::default_precision();
    mpfr_float::default_precision(digits10);
    try {
        auto out = residue_kernel<mpfr_float>(f, pole_index, m);
        mpfr_float::default_precision(saved);
        return out;
    } catch (...) {
        mpfr_float::default_precision(saved);
        throw;
    }
}

}  // namespace maxface
