#include "maxface/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace maxface {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

Layer::Layer(std::vector<Complex> points, double min_separation) : points_(std::move(points)) {
    if (points_.empty()) throw UsageError("a layer needs at least one point");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!is_finite(points_[i])) throw DomainError("layer points must be finite");
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(points_[i] - points_[j]) <= min_separation) {
                throw DomainError("coincident points inside a layer");
            }
        }
    }
}

Complex Layer::centroid() const {
    Complex acc{};
    for (auto p : points_) acc += p;
    return acc / static_cast<double>(points_.size());
}

Layer Layer::translated(Complex shift) const {
    std::vector<Complex> moved = points_;
    for (auto& p : moved) p += shift;
    return Layer(std::move(moved), 0.0);
}

double min_separation(const Layer& a, const Layer& b) {
    double d = std::numeric_limits<double>::infinity();
    for (auto p : a.points())
        for (auto q : b.points()) d = std::min(d, std::abs(p - q));
    return d;
}

FiniteBlock::FiniteBlock(std::vector<Layer> layers, Complex translation, double min_sep)
    : layers_(std::move(layers)), translation_(translation) {
    if (layers_.empty()) throw UsageError("a block needs height >= 1");
    if (layers_.front().size() != 1) throw UsageError("layer 0 of a block must hold exactly one neck");
    if (!is_finite(translation_) || std::abs(translation_) <= min_sep) {
        throw UsageError("block translation must be finite and nonzero");
    }
    for (int k = 0; k + 1 < height(); ++k) {
        if (min_separation(layers_[k], layers_[k + 1]) <= min_sep) {
            throw DomainError("coincident points in layers " + std::to_string(k) + " and " + std::to_string(k + 1));
        }
    }
    if (min_separation(layers_.back(), closing_layer()) <= min_sep) {
        throw DomainError("last layer meets the closing point of the block");
    }
}

const Layer& FiniteBlock::layer(int k) const {
    if (k < 0 || k >= height()) throw UsageError("block layer index out of range");
    return layers_[static_cast<std::size_t>(k)];
}

Layer PeriodicConfiguration::layer_at(int k) const {
    const int T = period();
    const int m = floor_div(k, T);
    const int r = k - m * T;
    const Layer& base = block_.layer(r);
    if (m == 0) return base;
    return base.translated(static_cast<double>(m) * translation());
}

int PeriodicConfiguration::neck_count(int k) const {
    const int T = period();
    return block_.layer(k - floor_div(k, T) * T).size();
}

Complex PeriodicConfiguration::point(int k, int i) const {
    const int T = period();
    const int m = floor_div(k, T);
    const Layer& base = block_.layer(k - m * T);
    if (i < 1 || i > base.size()) throw UsageError("neck index out of range");
    return base[i - 1] + static_cast<double>(m) * translation();
}

std::vector<Complex> UCoordinates::flattened() const {
    std::vector<Complex> out;
    for (std::size_t k = 0; k < l.size(); ++k) {
        out.push_back(l[k]);
        if (k < u.size()) out.insert(out.end(), u[k].begin(), u[k].end());
    }
    return out;
}

UCoordinates u_coords_from_points(const PeriodicConfiguration& config) {
    const int T = config.period();
    UCoordinates out;
    out.l.reserve(T);
    out.u.reserve(T);
    for (int k = 1; k <= T; ++k) {
        const double s = parity(k);
        const Layer prev = config.layer_at(k - 1);
        const Layer cur = config.layer_at(k);
        out.l.push_back(s * (cur[0] - prev[0]));
        std::vector<Complex> us;
        for (int i = 1; i < cur.size(); ++i) us.push_back(s * (cur[i] - cur[0]));
        out.u.push_back(std::move(us));
    }
    return out;
}

PeriodicConfiguration points_from_u(const UCoordinates& u, Complex gauge) {
    const int T = static_cast<int>(u.l.size());
    if (T < 1 || static_cast<int>(u.u.size()) != T) throw UsageError("u-coordinates need matching l and u of length T >= 1");
    if (!u.u.back().empty()) throw UsageError("layer T must hold a single neck");
    std::vector<Layer> layers;
    layers.emplace_back(std::vector<Complex>{gauge});
    Complex first = gauge;
    for (int k = 1; k < T; ++k) {
        const double s = parity(k);
        first += s * u.l[k - 1];
        std::vector<Complex> pts{first};
        for (auto uk : u.u[k - 1]) pts.push_back(first + s * uk);
        layers.emplace_back(std::move(pts));
    }
    const Complex closing = first + parity(T) * u.l[T - 1];
    return PeriodicConfiguration(FiniteBlock(std::move(layers), closing - gauge));
}

WindowedConfiguration concat_blocks(std::span<const FiniteBlock> blocks, double min_sep) {
    if (blocks.empty()) throw UsageError("concatenation needs at least one block");
    WindowedConfiguration out;
    out.blocks.assign(blocks.begin(), blocks.end());
    Complex anchor = blocks.front().opening_point();
    for (const auto& b : blocks) {
        const Complex shift = anchor - b.opening_point();
        out.block_offsets.push_back(static_cast<int>(out.layers.size()));
        for (const auto& layer : b.layers()) {
            Layer moved = layer.translated(shift);
            if (!out.layers.empty() && min_separation(out.layers.back(), moved) <= min_sep) {
                throw DomainError("coincident points at a block junction");
            }
            out.layers.push_back(std::move(moved));
        }
        anchor += b.translation();
    }
    Layer closing({anchor});
    if (min_separation(out.layers.back(), closing) <= min_sep) throw DomainError("coincident points at the closing layer");
    out.layers.push_back(std::move(closing));
    return out;
}

WindowedConfiguration repeat_block(const FiniteBlock& block, int copies, double min_sep) {
    if (copies < 1) throw UsageError("repeat count must be >= 1");
    std::vector<FiniteBlock> blocks(static_cast<std::size_t>(copies), block);
    return concat_blocks(blocks, min_sep);
}

ConcatRuleReport concat_paper_rule(const FiniteBlock& block, int m_first, int m_last) {
    if (m_last < m_first) throw UsageError("empty concatenation range");
    const int h = block.height();
    const PeriodicConfiguration base(block);
    const UCoordinates U = u_coords_from_points(base);
    const bool h_odd = (h % 2) != 0;

    ConcatRuleReport rep;
    rep.m_first = m_first;
    rep.m_last = m_last;
    const int copies = m_last - m_first + 1;
    rep.rule.blocks.assign(static_cast<std::size_t>(copies), block);

    const int k0 = m_first * h;
    Complex first = block.opening_point() + static_cast<double>(m_first) * block.translation();
    std::vector<std::vector<Complex>> pts{{first}};
    for (int k = k0 + 1; k <= (m_last + 1) * h; ++k) {
        const int m = floor_div(k - 1, h);
        const int kk = k - m * h;  // 1..h
        const double sm = parity(m);
        const Complex lk = h_odd ? U.l[kk - 1] : sm * U.l[kk - 1];
        std::vector<Complex> uk = U.u[kk - 1];
        if (h_odd)
            for (auto& v : uk) v *= sm;
        rep.l_sequence.push_back(lk);
        rep.u_sequence.push_back(uk);
        const double s = parity(k);
        first += s * lk;
        std::vector<Complex> layer{first};
        for (auto v : uk) layer.push_back(first + s * v);
        pts.push_back(std::move(layer));
    }
    for (std::size_t j = 0; j < pts.size(); ++j) {
        if (j % static_cast<std::size_t>(h) == 0 && j + 1 < pts.size()) {
            rep.rule.block_offsets.push_back(static_cast<int>(j));
        }
        rep.rule.layers.emplace_back(std::move(pts[j]), 0.0);
    }

    std::vector<FiniteBlock> blocks(static_cast<std::size_t>(copies), block);
    rep.reference = concat_blocks(blocks);
    const Complex start_shift = static_cast<double>(m_first) * block.translation();
    for (auto& layer : rep.reference.layers) layer = layer.translated(start_shift);

    for (std::size_t j = 0; j < rep.rule.layers.size(); ++j) {
        const Layer& a = rep.rule.layers[j];
        const Layer& b = rep.reference.layers[j];
        double dev = 0.0;
        for (int i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
        rep.layer_deviation.push_back(dev);
        rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    return rep;
}

Theorem1Report theorem1_hypotheses(const PeriodicConfiguration& config, const TolerancePolicy& tol) {
    Theorem1Report rep;
    const int T = config.period();
    for (int k = 0; k < T; ++k) rep.max_neck_count = std::max(rep.max_neck_count, config.neck_count(k));
    rep.bounded_neck_counts = true;

    // U has period T for even T and 2T for odd T; two periods of layers cover both.
    const PeriodicConfiguration doubled = [&] {
        std::vector<Layer> layers;
        for (int k = 0; k < 2 * T; ++k) layers.push_back(config.layer_at(k));
        return PeriodicConfiguration(FiniteBlock(std::move(layers), 2.0 * config.translation()));
    }();
    for (auto v : u_coords_from_points(doubled).flattened()) {
        const bool seen = std::any_of(rep.u_values.begin(), rep.u_values.end(),
                                      [&](Complex w) { return std::abs(w - v) <= tol.zero_abs; });
        if (!seen) rep.u_values.push_back(v);
    }
    rep.finite_u_values = true;

    for (int k = 0; k <= T; ++k) rep.centroids.push_back(config.layer_at(k).centroid());
    for (int k = 1; k <= T; ++k) {
        if (std::abs(rep.centroids[k] - rep.centroids[k - 1]) <= tol.zero_abs) {
            rep.centroid_condition = false;
            rep.failing_layers.push_back(k);
        }
    }
    rep.note = "item 3 checked as a centroid inequality between consecutive layers";
    return rep;
}

}  // namespace maxface
