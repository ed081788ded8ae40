#pragma once

#include <span>
#include <vector>

#include "maxface/numeric.hpp"
#include "maxface/series.hpp"

namespace maxface {

struct Pole {
    Complex location;
    Complex coefficient;
};

/// f(z) = sum_i c_i / (z - p_i). Locations pairwise distinct, coefficients nonzero.
/// An empty pole list is the zero function.
class SimplePoleFunction {
   public:
    SimplePoleFunction() = default;
    explicit SimplePoleFunction(std::vector<Pole> poles, double min_separation = TolerancePolicy{}.zero_abs);

    std::span<const Pole> poles() const { return poles_; }
    std::size_t size() const { return poles_.size(); }
    const Pole& pole(int index) const;

    /// Throws DomainError within `tol.zero_abs` of a pole.
    Complex evaluate(Complex z, const TolerancePolicy& tol = {}) const;
    Complex derivative(Complex z, const TolerancePolicy& tol = {}) const;

    SimplePoleFunction translated(Complex shift) const;
    Complex coefficient_sum() const;
    /// Smallest distance between two poles; +inf for fewer than two poles.
    double min_pole_gap() const;

   private:
    std::vector<Pole> poles_;
};

struct LocalExpansion {
    Complex coefficient;      ///< c in f = c/(z-p) + regular
    TruncatedSeries regular;  ///< Taylor series of f - c/(z-p) about p
};

LocalExpansion local_expansion(const SimplePoleFunction& f, int pole_index, int order);

struct ResidueOptions {
    /// 53 selects native double; anything larger runs in MPFR at that many bits.
    int significand_bits = 53;
};

struct ResidueValue {
    Complex value;
    /// Largest magnitude among the binomial-weighted terms that were summed.
    double scale = 0.0;
};

/// Res_{p} f^m for the pole p = f.pole(pole_index).location.
///
/// With f = c/w + A(w), w = z - p, only the cross terms contribute:
///   Res = sum_{j=1}^{m-1} C(m,j) c^{m-j} [w^{m-j-1}] A(w)^j,
/// so the regular part is expanded to exactly order m-2. For m = 1 the
/// residue is c itself.
ResidueValue residue_of_power_tracked(const SimplePoleFunction& f, int pole_index, int m,
                                      const ResidueOptions& options = {});

inline Complex residue_of_power(const SimplePoleFunction& f, int pole_index, int m,
                                const ResidueOptions& options = {}) {
    return residue_of_power_tracked(f, pole_index, m, options).value;
}

}  // namespace maxface
