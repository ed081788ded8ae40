#include <doctest.h>

#include <random>

#include "maxface/balance.hpp"
#include "maxface/errors.hpp"
#include "maxface/presets.hpp"
#include "../support/oracles.hpp"

using namespace maxface;

namespace {

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

oracle::Block to_oracle(const FiniteBlock& b) {
    oracle::Block ob;
    for (const auto& l : b.layers()) ob.emplace_back(l.points().begin(), l.points().end());
    return ob;
}

FiniteBlock random_block(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> h(1, 4), n(1, 4);
    const int T = h(rng);
    std::vector<Layer> layers{Layer({Complex{u(rng), u(rng)}})};
    for (int k = 1; k < T; ++k) {
        std::vector<Complex> pts;
        const int nk = n(rng);
        for (int i = 0; i < nk; ++i) pts.emplace_back(1.2 * i + 0.3 * u(rng), k + 0.3 * u(rng));
        layers.emplace_back(pts);
    }
    return FiniteBlock(layers, Complex{0.5 * u(rng), static_cast<double>(T)});
}

}  // namespace

TEST_CASE("force and flux examples") {
    const PeriodicConfiguration ch(preset_from_string("chain:a=0.3+2i"));
    CHECK(close(force(ch, 5, 1), 0.0, 1e-15));
    const PeriodicConfiguration c1(preset_from_string("chain:a=1"));
    CHECK(close(interlayer_flux(c1, 3), 1.0, 1e-15));

    const PeriodicConfiguration h2(preset("height2", {2}));
    CHECK(close(force(h2, 1, 1), 0.0, 1e-14));
    // (1/2)(-2i/(x^2+1)), x = 1/sqrt 3
    const double x = 1.0 / std::sqrt(3.0);
    const Complex g2 = 0.5 * Complex{0.0, -2.0} / (x * x + 1.0);
    CHECK(close(interlayer_flux(h2, 1), g2, 1e-14));
    CHECK(close(interlayer_flux(h2, 2), g2, 1e-14));

    const PeriodicConfiguration h3(preset("height3"));
    CHECK(close(force(h3, 1, 1), 0.0, 1e-14));
    // same-layer -1/(2 sqrt 2), lower 0.2357+0.3333i, upper 0.1179-0.3333i
    const double s = std::sqrt(2.0) / 2.0;
    const Complex p{-s, 1.0};
    const Complex same = 2.0 * 0.25 / (p - Complex{s, 1.0});
    CHECK(close(same, -1.0 / (2.0 * std::sqrt(2.0)), 1e-15));
    const Complex lower = -0.5 / (p - 0.0);
    CHECK(close(lower, {0.2357, 0.3333}, 1e-4));
    const Complex upper = -0.25 / (p - Complex{-s, 2.0}) - 0.25 / (p - Complex{s, 2.0});
    CHECK(close(upper, {0.1179, -0.3333}, 1e-4));
    for (int k = 1; k <= 3; ++k) CHECK(close(interlayer_flux(h3, k), Complex{0.0, -2.0 / 3.0}, 1e-14));

    const FiniteBlock collapsed({Layer({0.0}), Layer({Complex{0.0, 1.0}, Complex{1e-13, 1.0}}, 1e-14)}, {0.0, 2.0},
                                1e-14);
    CHECK_THROWS_AS(force(PeriodicConfiguration(collapsed), 1, 1), DomainError);
    CHECK_THROWS_AS(newton_balance(PeriodicConfiguration(collapsed), {}), DomainError);
}

TEST_CASE("residual modes") {
    const PeriodicConfiguration h2(preset("height2", {2}));
    CHECK(residual(h2, FluxMode::UniformFlux).norm < 1e-12);
    CHECK(residual(h2, FluxMode::StrictGZero).norm == doctest::Approx(0.75).epsilon(1e-12));
    const auto r = residual(h2, FluxMode::UniformFlux);
    CHECK(r.fluxes.size() == 2);
    CHECK(r.forces[0].size() == 2);
    CHECK(r.forces[1].size() == 1);
    CHECK(residual(PeriodicConfiguration(preset("chain", {2, 3, 1.0})), FluxMode::UniformFlux).norm <= 1e-15);
}

TEST_CASE("forces against direct sums, invariances and telescoping") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const FiniteBlock b = random_block(rng);
        const auto ob = to_oracle(b);
        const PeriodicConfiguration pc(b);
        const Complex shift{u(rng), u(rng)};
        Complex lambda{u(rng), u(rng)};
        if (std::abs(lambda) < 0.2) lambda = 1.0;
        std::vector<Layer> moved, scaled;
        for (const auto& l : b.layers()) {
            moved.push_back(l.translated(shift));
            std::vector<Complex> pts;
            for (auto p : l.points()) pts.push_back(lambda * p);
            scaled.emplace_back(pts);
        }
        const PeriodicConfiguration mc(FiniteBlock(moved, b.translation()));
        const PeriodicConfiguration sc(FiniteBlock(scaled, lambda * b.translation()));
        for (int k = -1; k <= b.height(); ++k) {
            const Complex G = interlayer_flux(pc, k);
            CHECK(close(G, oracle::flux(ob, b.translation(), k), 1e-12));
            CHECK(close(interlayer_flux(mc, k), G, 1e-11));
            CHECK(close(interlayer_flux(sc, k), G / lambda, 1e-11));
            Complex sum = 0.0;
            for (int i = 1; i <= pc.neck_count(k); ++i) {
                const Complex F = force(pc, k, i);
                sum += F;
                CHECK(close(F, oracle::force(ob, b.translation(), k, i - 1), 1e-11));
                CHECK(close(force(mc, k, i), F, 1e-10));
                CHECK(close(force(sc, k, i), F / lambda, 1e-10));
            }
            CHECK(close(sum, interlayer_flux(pc, k + 1) - G, 1e-12));
        }
    }
}

TEST_CASE("balanced presets have constant flux") {
    for (const char* s : {"height2:n=1", "height2:n=4", "height3", "chain:h=2,a=1"}) {
        const auto r = residual(PeriodicConfiguration(preset_from_string(s)), FluxMode::UniformFlux);
        for (const auto& G : r.fluxes) CHECK(close(G, r.fluxes[0], 1e-12));
    }
}

TEST_CASE("newton balance") {
    const PeriodicConfiguration h2(preset("height2", {2}));
    SolverSettings settings;
    CHECK(newton_balance(h2, settings).iterations == 0);

    const double c = 1.0 / std::sqrt(3.0);
    const FiniteBlock nudged({Layer({0.0}), Layer({Complex{c, 1.0}, Complex{-c + 0.05, 1.0}})}, {0.0, 2.0});
    for (Gauge g : {Gauge::FixFirstL, Gauge::FixTranslationC}) {
        settings.gauge = g;
        settings.verify_jacobian = true;
        const SolverOutcome out = newton_balance(PeriodicConfiguration(nudged), settings);
        CHECK(out.residual_history.back() < 1e-12);
        REQUIRE(out.jacobian_discrepancy.has_value());
        CHECK(*out.jacobian_discrepancy < 1e-5);
        CHECK(newton_balance(out.config, settings).iterations == 0);

        // modulo the gauge: normalize so that p_{0,1} = 0 and p_{2,1} = 2i
        const PeriodicConfiguration& b = out.config;
        const Complex z0 = b.point(0, 1);
        const Complex norm = Complex{0.0, 2.0} / b.translation();
        for (int i = 1; i <= 2; ++i) CHECK(close((b.point(1, i) - z0) * norm, h2.point(1, i), 1e-10));
        if (g == Gauge::FixTranslationC) CHECK(close(b.translation(), nudged.translation(), 1e-14));
    }

    settings.target_mode = FluxMode::StrictGZero;
    CHECK_THROWS_AS(newton_balance(h2, settings), UsageError);
}

TEST_CASE("window spectrum") {
    const PeriodicConfiguration h2(preset("height2", {2}));
    for (Boundary b : {Boundary::Truncate, Boundary::Wrap}) {
        for (int W : {1, 2, 4}) {
            const auto s = nondegeneracy_spectrum(h2, W, b);
            CHECK(s.min_singular_value > 1e-3);
            CHECK(s.warnings.empty());
            CHECK(s.dimension == 3 * W);
        }
    }
    CHECK_THROWS_AS(nondegeneracy_spectrum(h2, 0, Boundary::Wrap), UsageError);
    const auto chain = nondegeneracy_spectrum(PeriodicConfiguration(preset("chain", {2, 2, 1.0})), 2, Boundary::Wrap);
    CHECK(chain.min_singular_value >= 0.0);
    const FiniteBlock off({Layer({0.0}), Layer({Complex{0.2, 1.0}, Complex{-0.9, 1.0}})}, {0.0, 2.0});
    CHECK_FALSE(nondegeneracy_spectrum(PeriodicConfiguration(off), 1, Boundary::Wrap).warnings.empty());
    CHECK(spectrum_trend(h2, {1, 2, 4, 8}, Boundary::Truncate).size() == 4);
}
