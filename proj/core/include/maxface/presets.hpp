#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "maxface/configuration.hpp"

namespace maxface {

struct PresetParams {
    int n = 2;                 ///< height2: necks in the middle layer
    int h = 1;                 ///< chain: number of layers per block
    Complex a{1.0, 0.0};       ///< chain: step between consecutive necks
};

/// height2: {0}, {i + cot(j pi/(n+1))}, C = 2i
/// height3: {0}, {+-sqrt2/2 + i}, {+-sqrt2/2 + 2i}, C = 3i
/// chain:   p_{k,1} = k a for k < h, C = h a
FiniteBlock preset(std::string_view name, const PresetParams& params = {});

/// Parses "height2:n=4", "height3", "chain:h=1,a=1+0i".
FiniteBlock preset_from_string(std::string_view spec);

struct PresetInfo {
    std::string name;
    std::string example;
    std::string description;
};
std::vector<PresetInfo> list_presets();

/// Accepts "1", "-2.5", "1+0i", "0.5-2i", "2i", "-i".
Complex parse_complex(std::string_view text);

}  // namespace maxface
