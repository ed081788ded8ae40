#include "maxface/series.hpp"

#include <algorithm>
#include <string>

namespace maxface {

TruncatedSeries::TruncatedSeries(Complex center, std::vector<Complex> coefficients)
    : center_(center), coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) {
        throw UsageError("a truncated series needs at least the constant coefficient");
    }
    if (!is_finite(center_) || !std::all_of(coeffs_.begin(), coeffs_.end(), is_finite)) {
        throw DomainError("series coefficients must be finite");
    }
}

TruncatedSeries TruncatedSeries::constant(Complex center, Complex value, int order) {
    if (order < 0) throw UsageError("series order must be >= 0");
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
    c[0] = value;
    return {center, std::move(c)};
}

TruncatedSeries TruncatedSeries::zero(Complex center, int order) { return constant(center, Complex{}, order); }

Complex TruncatedSeries::operator[](int s) const {
    if (s < 0 || s > order()) {
        throw UsageError("series coefficient " + std::to_string(s) + " beyond retained order " +
                         std::to_string(order()));
    }
    return coeffs_[static_cast<std::size_t>(s)];
}

Complex TruncatedSeries::evaluate(Complex z) const {
    const Complex w = z - center_;
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
    return acc;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    if (order < 0 || order > this->order()) throw UsageError("cannot truncate to that order");
    return {center_, std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + order + 1)};
}

namespace {

void require_same_center(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.center() != b.center()) throw UsageError("series have different expansion centers");
}

}  // namespace

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_center(a, b);
    const int order = std::min(a.order(), b.order());
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
    for (int s = 0; s <= order; ++s) c[s] = a[s] + b[s];
    return {a.center(), std::move(c)};
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_center(a, b);
    const int order = std::min(a.order(), b.order());
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
    const auto ac = a.coefficients();
    const auto bc = b.coefficients();
    for (int s = 0; s <= order; ++s) {
        Complex acc{};
        for (int j = 0; j <= s; ++j) acc += ac[j] * bc[s - j];
        c[s] = acc;
    }
    return {a.center(), std::move(c)};
}

TruncatedSeries series_pow(const TruncatedSeries& a, int exponent) {
    if (exponent < 1) throw UsageError("series exponent must be >= 1");
    TruncatedSeries result = TruncatedSeries::constant(a.center(), Complex{1.0, 0.0}, a.order());
    TruncatedSeries base = a;
    bool first = true;
    while (exponent > 0) {
        if (exponent & 1) {
            result = first ? base : series_mul(result, base);
            first = false;
        }
        exponent >>= 1;
        if (exponent > 0) base = series_mul(base, base);
    }
    return result;
}

}  // namespace maxface
