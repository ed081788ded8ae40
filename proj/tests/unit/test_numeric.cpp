#include <doctest.h>

#include <random>

#include "maxface/errors.hpp"
#include "maxface/pole_function.hpp"
#include "maxface/series.hpp"
#include "../support/oracles.hpp"

using namespace maxface;

namespace {

SimplePoleFunction to_spf(const oracle::Poles& f) {
    std::vector<Pole> poles;
    for (auto [p, c] : f) poles.push_back({p, c});
    return SimplePoleFunction(poles);
}

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("series arithmetic examples") {
    const TruncatedSeries one_plus_z(0.0, {1.0, 1.0, 0.0});
    const auto sq = series_pow(one_plus_z, 2);
    CHECK(sq.order() == 2);
    CHECK(close(sq[0], 1.0, 1e-15));
    CHECK(close(sq[1], 2.0, 1e-15));
    CHECK(close(sq[2], 1.0, 1e-15));

    const TruncatedSeries s(0.5, {Complex{1, 2}, Complex{-3, 0.5}, Complex{0.25, 0}});
    const auto id = series_mul(s, TruncatedSeries::constant(0.5, 1.0, 2));
    for (int j = 0; j <= 2; ++j) CHECK(close(id[j], s[j], 0.0));

    const TruncatedSeries a(0.0, {-1.0, -1.0, -1.0});
    const auto a2 = series_pow(a, 2);
    CHECK(close(a2[0], 1.0, 1e-15));
    CHECK(close(a2[1], 2.0, 1e-15));
    CHECK(close(a2[2], 3.0, 1e-15));
}

TEST_CASE("series errors") {
    const TruncatedSeries a(0.0, {1.0, 2.0});
    const TruncatedSeries b(1.0, {1.0, 2.0});
    CHECK_THROWS_AS(series_add(a, b), UsageError);
    CHECK_THROWS_AS(series_mul(a, b), UsageError);
    CHECK_THROWS_AS((void)a[2], UsageError);
    CHECK_THROWS_AS(series_pow(a, 0), UsageError);
}

TEST_CASE("series_pow matches repeated multiplication") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> c(6);
        for (auto& x : c) x = {u(rng), u(rng)};
        const TruncatedSeries s(0.0, c);
        TruncatedSeries acc = s;
        for (int e = 1; e <= 6; ++e) {
            if (e > 1) acc = series_mul(acc, s);
            const auto p = series_pow(s, e);
            for (int j = 0; j <= 5; ++j) CHECK(close(p[j], acc[j], 1e-12));
        }
    }
}

TEST_CASE("simple pole function evaluation") {
    const SimplePoleFunction inv({{0.0, 1.0}});
    CHECK(close(inv.evaluate(2.0), 0.5, 1e-15));
    CHECK_THROWS_AS(SimplePoleFunction({{0.0, 1.0}, {0.0, -1.0}}), UsageError);
    const SimplePoleFunction odd({{1.0, 1.0}, {-1.0, 1.0}});
    CHECK(close(odd.evaluate(0.0), 0.0, 1e-15));
    CHECK_THROWS_AS(inv.evaluate(1e-12), DomainError);
}

TEST_CASE("local expansion examples") {
    const SimplePoleFunction inv({{0.0, 1.0}});
    const auto e = local_expansion(inv, 0, 3);
    CHECK(close(e.coefficient, 1.0, 0.0));
    for (int j = 0; j <= 3; ++j) CHECK(close(e.regular[j], 0.0, 0.0));

    const SimplePoleFunction two({{0.0, 1.0}, {1.0, 1.0}});
    const auto e2 = local_expansion(two, 0, 1);
    CHECK(close(e2.coefficient, 1.0, 0.0));
    CHECK(close(e2.regular[0], -1.0, 1e-15));
    CHECK(close(e2.regular[1], -1.0, 1e-15));

    const auto shifted = local_expansion(two.translated(Complex{0.3, -2.0}), 1, 4);
    const auto base = local_expansion(two, 1, 4);
    for (int j = 0; j <= 4; ++j) CHECK(close(shifted.regular[j], base.regular[j], 1e-13));
}

TEST_CASE("residue_of_power examples") {
    CHECK(close(residue_of_power(SimplePoleFunction({{0.0, 1.0}}), 0, 3), 0.0, 0.0));
    const SimplePoleFunction two({{0.0, 1.0}, {1.0, 1.0}});
    CHECK(close(residue_of_power(two, 0, 2), -2.0, 1e-14));
    CHECK(close(residue_of_power(two, 0, 3), 0.0, 1e-14));
    CHECK(close(residue_of_power(two, 0, 1), 1.0, 0.0));
}

TEST_CASE("residue_of_power against contour quadrature") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = oracle::random_poles(rng, 2 + trial % 4);
        const auto spf = to_spf(f);
        const double rad = 0.25 * oracle::min_gap(f);
        for (int m = 1; m <= 6; ++m) {
            for (int p = 0; p < static_cast<int>(f.size()); ++p) {
                const Complex want = oracle::contour_residue(f, f[p].first, rad, m);
                const Complex got = residue_of_power(spf, p, m);
                CHECK(std::abs(got - want) <= 1e-8 * std::max(1.0, std::abs(want)));
            }
        }
    }
}

TEST_CASE("residue-sum identity, translation and scaling") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = oracle::random_poles(rng, 3 + trial % 3);
        Complex sum = 0.0;
        for (std::size_t j = 0; j + 1 < f.size(); ++j) sum += f[j].second;
        f.back().second = -sum;
        const auto spf = to_spf(f);
        const Complex shift{0.7, -1.3};
        const Complex lambda{1.4, 0.6};
        std::vector<Pole> scaled;
        for (auto [p, c] : f) scaled.push_back({lambda * p, c});
        const SimplePoleFunction sf(scaled);
        for (int m = 2; m <= 6; ++m) {
            Complex total = 0.0;
            double scale = 0.0;
            for (int p = 0; p < static_cast<int>(f.size()); ++p) {
                const auto v = residue_of_power_tracked(spf, p, m);
                total += v.value;
                scale = std::max(scale, v.scale);
                CHECK(close(residue_of_power(spf.translated(shift), p, m), v.value, 1e-10 * std::max(1.0, v.scale)));
                if (m <= 5) {
                    const Complex want = std::pow(lambda, 1 - m) * v.value;
                    CHECK(close(residue_of_power(sf, p, m), want, 1e-10 * std::max(1.0, v.scale)));
                }
            }
            CHECK(std::abs(total) <= 1e-10 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("extended precision agrees with double") {
    std::mt19937_64 rng(5);
    const auto spf = to_spf(oracle::random_poles(rng, 4));
    for (int m = 2; m <= 10; ++m) {
        const auto d = residue_of_power_tracked(spf, 1, m);
        const auto x = residue_of_power_tracked(spf, 1, m, {200});
        CHECK(std::abs(d.value - x.value) <= 1e-12 * std::max(1.0, d.scale));
    }
}
