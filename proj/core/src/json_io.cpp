#include "maxface/json_io.hpp"

#include <string>

namespace maxface {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw UsageError("complex numbers are encoded as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

namespace {

json complex_list(const std::vector<Complex>& zs) {
    json out = json::array();
    for (auto z : zs) out.push_back(complex_to_json(z));
    return out;
}

}  // namespace

json block_to_json(const FiniteBlock& block) {
    json layers = json::array();
    for (const auto& layer : block.layers()) {
        layers.push_back({{"points", complex_list({layer.points().begin(), layer.points().end()})}});
    }
    return {{"schema", kConfigSchema}, {"block", {{"layers", layers}, {"translation", complex_to_json(block.translation())}}}};
}

FiniteBlock block_from_json(const json& doc) {
    if (!doc.is_object()) throw UsageError("configuration must be a JSON object");
    if (doc.value("schema", std::string{}) != kConfigSchema) {
        throw UsageError(std::string("configuration schema must be \"") + kConfigSchema + "\"");
    }
    if (!doc.contains("block") || !doc["block"].is_object()) throw UsageError("configuration lacks a \"block\" object");
    const json& block = doc["block"];
    if (!block.contains("layers") || !block["layers"].is_array()) throw UsageError("block lacks a \"layers\" array");
    if (!block.contains("translation")) throw UsageError("block lacks \"translation\"");
    std::vector<Layer> layers;
    for (const auto& layer : block["layers"]) {
        if (!layer.is_object() || !layer.contains("points") || !layer["points"].is_array()) {
            throw UsageError("each layer needs a \"points\" array");
        }
        std::vector<Complex> pts;
        for (const auto& p : layer["points"]) pts.push_back(complex_from_json(p));
        layers.emplace_back(std::move(pts));
    }
    return FiniteBlock(std::move(layers), complex_from_json(block["translation"]));
}

json to_json(const TolerancePolicy& tol) {
    return {{"zero_abs", tol.zero_abs}, {"zero_rel", tol.zero_rel}, {"newton_resid", tol.newton_resid}};
}

json to_json(const ForceResidual& r) {
    json forces = json::array();
    for (const auto& layer : r.forces) forces.push_back(complex_list(layer));
    return {{"mode", to_string(r.mode)},
            {"residual_norm", r.norm},
            {"fluxes", complex_list(r.fluxes)},
            {"forces", forces},
            {"layers", "k = 1..T"}};
}

json to_json(const WindowSpectrum& s) {
    return {{"window_periods", s.window_periods},
            {"boundary", to_string(s.boundary)},
            {"min_singular_value", s.min_singular_value},
            {"max_singular_value", s.max_singular_value},
            {"condition_estimate", s.condition_estimate},
            {"dimension", s.dimension},
            {"residual_norm", s.residual_norm},
            {"warnings", s.warnings},
            {"note", "finite-window surrogate for invertibility on l-infinity"}};
}

json to_json(const Theorem1Report& r) {
    return {{"bounded_neck_counts", r.bounded_neck_counts},
            {"max_neck_count", r.max_neck_count},
            {"finite_u_values", r.finite_u_values},
            {"u_values", complex_list(r.u_values)},
            {"centroid_condition", r.centroid_condition},
            {"failing_layers", r.failing_layers},
            {"centroids", complex_list(r.centroids)},
            {"all_pass", r.all_pass()},
            {"note", r.note}};
}

json to_json(const ConcatRuleReport& r) {
    json layers = json::array();
    for (std::size_t j = 0; j < r.rule.layers.size(); ++j) {
        const auto& a = r.rule.layers[j];
        const auto& b = r.reference.layers[j];
        layers.push_back({{"rule", complex_list({a.points().begin(), a.points().end()})},
                          {"p_space", complex_list({b.points().begin(), b.points().end()})},
                          {"deviation", r.layer_deviation[j]}});
    }
    return {{"m_first", r.m_first},
            {"m_last", r.m_last},
            {"max_deviation", r.max_deviation},
            {"l_sequence", complex_list(r.l_sequence)},
            {"layers", layers}};
}

json to_json(const TrigWave& w, int r, const TolerancePolicy& tol) {
    const WaveZeros z = wave_zeros(w, tol);
    return {{"r", r},
            {"m", w.m},
            {"cos", w.cos_coeff},
            {"sin", w.sin_coeff},
            {"scale", w.scale},
            {"identically_zero", z.identically_zero},
            {"zeros", z.angles}};
}

json to_json(const NeckReport& r, const TolerancePolicy& tol) {
    json waves = json::array();
    json residues = json::array();
    for (std::size_t j = 0; j < r.waves.size(); ++j) {
        waves.push_back(to_json(r.waves[j], r.residue_pairs[j].r, tol));
        residues.push_back({{"r", r.residue_pairs[j].r},
                            {"X", complex_to_json(r.residue_pairs[j].X)},
                            {"Y", complex_to_json(r.residue_pairs[j].Y)}});
    }
    json prop1 = json::array();
    for (const auto& f : r.prop1) {
        prop1.push_back({{"r", f.r},
                         {"conjugate_relation", f.conjugate_relation},
                         {"parity", f.parity},
                         {"wave_zero", f.wave_zero},
                         {"consistent", f.consistent}});
    }
    json out = {{"neck", {r.neck.k, r.neck.i}},
                {"classification", to_string(r.classification)},
                {"r_max", r.r_max},
                {"first_nonzero_r", r.first_nonzero_r},
                {"zeros", r.zeros},
                {"waves", waves},
                {"residues", residues},
                {"prop1", prop1},
                {"notes", r.notes}};
    return out;
}

json to_json(const ClosedFormComparison& c) {
    json entries = json::array();
    for (const auto& e : c.entries) {
        entries.push_back({{"neck", {1, e.neck_index}},
                           {"engine_cos", e.engine.cos_coeff},
                           {"engine_sin", e.engine.sin_coeff},
                           {"closed_form_cos", e.closed_form.cos_coeff},
                           {"agree", e.agree}});
    }
    return {{"n", c.n}, {"all_agree", c.all_agree}, {"entries", entries}, {"warnings", c.warnings}};
}

json to_json(const WaistCurve& w) {
    return {{"neck", {w.neck.k, w.neck.i}},
            {"t", w.t},
            {"anchor", complex_to_json(w.anchor)},
            {"mean_radius", w.mean_radius},
            {"max_diameter", w.max_diameter},
            {"points", complex_list(w.points)}};
}

json to_json(const SpacePoint& p) { return json::array({p.x1, p.x2, p.x3}); }

}  // namespace maxface
