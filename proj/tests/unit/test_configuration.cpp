#include <doctest.h>

#include <numbers>
#include <random>

#include "maxface/configuration.hpp"
#include "maxface/errors.hpp"
#include "maxface/presets.hpp"
#include "../support/oracles.hpp"

using namespace maxface;

namespace {

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

FiniteBlock random_block(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> h(1, 4), n(1, 3);
    const int T = h(rng);
    std::vector<Layer> layers{Layer({Complex{u(rng), u(rng)}})};
    for (int k = 1; k < T; ++k) {
        std::vector<Complex> pts;
        const int nk = n(rng);
        for (int i = 0; i < nk; ++i) pts.emplace_back(1.5 * i + 0.3 * u(rng), k + 0.3 * u(rng));
        layers.emplace_back(pts);
    }
    return FiniteBlock(layers, Complex{0.4 * u(rng), static_cast<double>(T)});
}

}  // namespace

TEST_CASE("layer validation") {
    CHECK_THROWS_AS(Layer(std::vector<Complex>{}), UsageError);
    CHECK_THROWS_AS(Layer({1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(FiniteBlock({Layer({0.0, 1.0})}, 1.0), UsageError);
    CHECK_THROWS_AS(FiniteBlock({Layer({0.0}), Layer({0.0})}, 2.0), DomainError);
    CHECK_THROWS_AS(FiniteBlock({Layer({0.0}), Layer({1.0})}, 1.0), DomainError);
}

TEST_CASE("preset point lists") {
    const FiniteBlock h2 = preset("height2", {2});
    const double c = 1.0 / std::sqrt(3.0);
    CHECK(close(h2.layer(1)[0], {c, 1.0}, 1e-15));
    CHECK(close(h2.layer(1)[1], {-c, 1.0}, 1e-15));

    const FiniteBlock h3 = preset("height3");
    const double s = std::sqrt(2.0) / 2.0;
    CHECK(close(h3.layer(2)[0], {-s, 2.0}, 1e-15));
    CHECK(close(h3.layer(2)[1], {s, 2.0}, 1e-15));

    const PeriodicConfiguration ch(preset_from_string("chain:a=1,h=1"));
    for (int k = 0; k <= 3; ++k) CHECK(close(ch.point(k, 1), static_cast<double>(k), 1e-15));

    CHECK_THROWS_AS(preset_from_string("height4"), UsageError);
    CHECK_THROWS_AS(preset_from_string("height2:n=0"), UsageError);
    CHECK_THROWS_AS(preset_from_string("height2:q=2"), UsageError);
    CHECK(close(parse_complex("1+0i"), 1.0, 0.0));
    CHECK(close(parse_complex("-2i"), Complex{0.0, -2.0}, 0.0));
    CHECK(close(parse_complex("0.5-1.5i"), Complex{0.5, -1.5}, 0.0));
}

TEST_CASE("cotangent layer sums to n i") {
    for (int n = 1; n <= 12; ++n) {
        const Layer l = preset("height2", {n}).layer(1);
        Complex sum = 0.0;
        for (auto p : l.points()) sum += p;
        CHECK(close(sum, Complex{0.0, static_cast<double>(n)}, 1e-12));
    }
}

TEST_CASE("layer_at periodic extension") {
    const PeriodicConfiguration h2(preset("height2", {2}));
    CHECK(close(h2.layer_at(0)[0], 0.0, 0.0));
    CHECK(close(h2.layer_at(2)[0], Complex{0.0, 2.0}, 0.0));
    CHECK(close(h2.layer_at(-2)[0], Complex{0.0, -2.0}, 0.0));
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const FiniteBlock b = random_block(rng);
        oracle::Block ob;
        for (const auto& l : b.layers()) ob.emplace_back(l.points().begin(), l.points().end());
        const PeriodicConfiguration pc(b);
        for (int k = -7; k <= 7; ++k) {
            const auto want = oracle::layer(ob, b.translation(), k);
            const Layer got = pc.layer_at(k);
            REQUIRE(got.size() == static_cast<int>(want.size()));
            for (int i = 0; i < got.size(); ++i) CHECK(close(got[i], want[i], 1e-13));
        }
    }
}

TEST_CASE("u coordinates") {
    for (int n = 1; n <= 6; ++n) {
        const auto U = u_coords_from_points(PeriodicConfiguration(preset("height2", {n})));
        const double cot = 1.0 / std::tan(std::numbers::pi / (n + 1));
        CHECK(close(U.l[0], -Complex{cot, 1.0}, 1e-13));
    }
    const auto U3 = u_coords_from_points(PeriodicConfiguration(preset("height3")));
    CHECK(close(U3.u[0][0], -std::sqrt(2.0), 1e-14));
    CHECK(close(U3.l[1], Complex{0.0, 1.0}, 1e-14));

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const FiniteBlock b = random_block(rng);
        const PeriodicConfiguration pc(b);
        const PeriodicConfiguration back = points_from_u(u_coords_from_points(pc), b.opening_point());
        CHECK(close(back.translation(), b.translation(), 1e-10));
        for (int k = 0; k < b.height(); ++k)
            for (int i = 1; i <= pc.neck_count(k); ++i) CHECK(close(back.point(k, i), pc.point(k, i), 1e-10));
    }
}

TEST_CASE("concatenation in p-space") {
    const auto w2 = repeat_block(preset("height2", {2}), 3);
    for (int i = 0; i < 2; ++i) CHECK(close(w2.layers[3][i], w2.layers[1][i] + Complex{0.0, 2.0}, 1e-15));
    const auto w3 = repeat_block(preset("height3"), 2);
    for (int i = 0; i < 2; ++i) CHECK(close(w3.layers[4][i], w3.layers[1][i] + Complex{0.0, 3.0}, 1e-15));
    const auto wc = repeat_block(preset("chain", {2, 1, 1.0}), 4);
    for (std::size_t k = 0; k < wc.layers.size(); ++k) CHECK(close(wc.layers[k][0], static_cast<double>(k), 1e-15));

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const FiniteBlock b = random_block(rng);
        const auto w = repeat_block(b, 3);
        const int T = b.height();
        for (std::size_t k = 0; k + T < w.layers.size(); ++k)
            for (int i = 0; i < w.layers[k].size(); ++i)
                CHECK(close(w.layers[k + T][i] - w.layers[k][i], b.translation(), 1e-12));
    }
}

TEST_CASE("parity concatenation rule is cross-validated") {
    const auto same = concat_paper_rule(preset("height2", {2}), 0, 0);
    CHECK(same.max_deviation <= 1e-14);
    const auto h3 = concat_paper_rule(preset("height3"), 0, 1);
    CHECK(h3.layer_deviation.size() == h3.reference.layers.size());
    CHECK(h3.max_deviation > 1e-3);
    const auto ref = repeat_block(preset("height3"), 2);
    for (std::size_t k = 0; k < ref.layers.size(); ++k)
        for (int i = 0; i < ref.layers[k].size(); ++i) CHECK(close(h3.reference.layers[k][i], ref.layers[k][i], 1e-14));

    // U over two chain periods: l_{k+2} = l_k
    const auto U = u_coords_from_points(PeriodicConfiguration(preset("chain", {2, 2, 1.0})));
    CHECK(close(U.l[0], -U.l[1], 1e-15));
    CHECK_THROWS_AS(concat_paper_rule(preset("height3"), 2, 1), UsageError);
}

TEST_CASE("theorem 1 hypotheses") {
    const auto r2 = theorem1_hypotheses(PeriodicConfiguration(preset("height2", {2})));
    CHECK(r2.all_pass());
    CHECK(close(r2.centroids[1], Complex{0.0, 1.0}, 1e-14));
    CHECK(theorem1_hypotheses(PeriodicConfiguration(preset("height3"))).all_pass());
    const FiniteBlock flat({Layer({0.0}), Layer({-1.0, 1.0})}, Complex{0.0, 2.0});
    const auto bad = theorem1_hypotheses(PeriodicConfiguration(flat));
    CHECK_FALSE(bad.centroid_condition);
    CHECK_FALSE(bad.failing_layers.empty());
}
