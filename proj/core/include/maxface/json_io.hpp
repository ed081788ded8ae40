#pragma once

#include <nlohmann/json.hpp>

#include "maxface/balance.hpp"
#include "maxface/configuration.hpp"
#include "maxface/singularity.hpp"
#include "maxface/weierstrass.hpp"

namespace maxface {

inline constexpr const char* kConfigSchema = "maxface-config/1";

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

/// { "schema": "maxface-config/1", "block": { "layers": [ { "points": [[re, im], ...] }, ... ],
///   "translation": [re, im] } }
nlohmann::json block_to_json(const FiniteBlock& block);
/// Throws UsageError on a malformed document.
FiniteBlock block_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const TolerancePolicy& tol);
nlohmann::json to_json(const ForceResidual& r);
nlohmann::json to_json(const WindowSpectrum& s);
nlohmann::json to_json(const Theorem1Report& r);
nlohmann::json to_json(const ConcatRuleReport& r);
nlohmann::json to_json(const TrigWave& w, int r, const TolerancePolicy& tol);
nlohmann::json to_json(const NeckReport& r, const TolerancePolicy& tol);
nlohmann::json to_json(const ClosedFormComparison& c);
nlohmann::json to_json(const WaistCurve& w);
nlohmann::json to_json(const SpacePoint& p);

}  // namespace maxface
