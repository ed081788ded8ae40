#pragma once

#include <cmath>
#include <complex>

#include "maxface/errors.hpp"

namespace maxface {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Zero tests used throughout: |x| <= zero_abs + zero_rel * scale, where
/// scale is the largest intermediate magnitude seen while computing x.
struct TolerancePolicy {
    double zero_abs = 1e-10;
    double zero_rel = 1e-9;
    double newton_resid = 1e-12;

    void validate() const {
        if (!(zero_abs > 0.0) || !(zero_rel > 0.0) || !(newton_resid > 0.0)) {
            throw UsageError("tolerance policy values must be strictly positive");
        }
    }

    double threshold(double scale) const { return zero_abs + zero_rel * scale; }
    bool is_zero(double magnitude, double scale = 0.0) const { return magnitude <= threshold(scale); }
};

}  // namespace maxface
