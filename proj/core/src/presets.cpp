#include "maxface/presets.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

namespace maxface {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view s, std::string_view whole) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw UsageError("cannot parse complex number '" + std::string(whole) + "'");
    }
    return v;
}

int parse_int(std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw UsageError("cannot parse integer '" + std::string(s) + "'");
    return v;
}

}  // namespace

Complex parse_complex(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw UsageError("empty complex number");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
    const std::string_view body = s.substr(0, s.size() - 1);
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string_view::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    if (split == std::string_view::npos) return {0.0, parse_real(body, text)};
    return {parse_real(body.substr(0, split), text), parse_real(body.substr(split), text)};
}

FiniteBlock preset(std::string_view name, const PresetParams& params) {
    using std::numbers::pi;
    if (name == "height2") {
        const int n = params.n;
        if (n < 1) throw UsageError("height2 needs n >= 1");
        std::vector<Complex> mid;
        for (int j = 1; j <= n; ++j) {
            const double x = j * pi / (n + 1);
            mid.emplace_back(std::cos(x) / std::sin(x), 1.0);
        }
        return FiniteBlock({Layer({Complex{}}), Layer(std::move(mid))}, Complex{0.0, 2.0});
    }
    if (name == "height3") {
        const double s = std::numbers::sqrt2 / 2.0;
        return FiniteBlock({Layer({Complex{}}), Layer({{-s, 1.0}, {s, 1.0}}), Layer({{-s, 2.0}, {s, 2.0}})},
                           Complex{0.0, 3.0});
    }
    if (name == "chain") {
        if (params.h < 1) throw UsageError("chain needs h >= 1");
        if (params.a == Complex{}) throw UsageError("chain needs a != 0");
        std::vector<Layer> layers;
        for (int k = 0; k < params.h; ++k) layers.emplace_back(std::vector<Complex>{static_cast<double>(k) * params.a});
        return FiniteBlock(std::move(layers), static_cast<double>(params.h) * params.a);
    }
    throw UsageError("unknown preset '" + std::string(name) + "'");
}

FiniteBlock preset_from_string(std::string_view spec) {
    const std::string_view s = trim(spec);
    const auto colon = s.find(':');
    const std::string_view name = s.substr(0, colon);
    PresetParams params;
    if (colon != std::string_view::npos) {
        std::string_view rest = s.substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = trim(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) throw UsageError("preset parameter needs key=value: '" + std::string(item) + "'");
            const std::string_view key = trim(item.substr(0, eq));
            const std::string_view value = trim(item.substr(eq + 1));
            if (key == "n") {
                params.n = parse_int(value);
            } else if (key == "h") {
                params.h = parse_int(value);
            } else if (key == "a") {
                params.a = parse_complex(value);
            } else {
                throw UsageError("unknown preset parameter '" + std::string(key) + "'");
            }
        }
    }
    return preset(name, params);
}

std::vector<PresetInfo> list_presets() {
    return {
        {"height2", "height2:n=4", "type (1,n,1): {0}, {i + cot(j pi/(n+1))}, period 2i"},
        {"height3", "height3", "type (1,2,2,1): {0}, {+-sqrt2/2 + i}, {+-sqrt2/2 + 2i}, period 3i"},
        {"chain", "chain:h=1,a=1+0i", "one neck per layer, p_{k,1} = k a, period h a"},
    };
}

}  // namespace maxface
