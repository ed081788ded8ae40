#pragma once

#include <span>
#include <vector>

#include "maxface/numeric.hpp"

namespace maxface {

/// Power series in (z - center) truncated after `order()`.
class TruncatedSeries {
   public:
    TruncatedSeries(Complex center, std::vector<Complex> coefficients);

    static TruncatedSeries constant(Complex center, Complex value, int order);
    static TruncatedSeries zero(Complex center, int order);

    Complex center() const { return center_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const Complex> coefficients() const { return coeffs_; }

    /// Coefficient of (z - center)^s; throws beyond the retained order.
    Complex operator[](int s) const;

    Complex evaluate(Complex z) const;
    TruncatedSeries truncated(int order) const;

   private:
    Complex center_;
    std::vector<Complex> coeffs_;
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
/// a^exponent by binary powering; exponent >= 1.
TruncatedSeries series_pow(const TruncatedSeries& a, int exponent);

}  // namespace maxface
