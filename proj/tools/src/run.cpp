#include "maxface_cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "maxface/configuration.hpp"
#include "maxface/errors.hpp"
#include "maxface/json_io.hpp"
#include "maxface/presets.hpp"
#include "maxface/weierstrass.hpp"

#ifndef MAXFACE_VERSION
#define MAXFACE_VERSION "0.0.0"
#endif

namespace maxface::cli {

using nlohmann::json;

std::string tool_version() { return MAXFACE_VERSION; }

std::vector<std::string> command_names() {
    return {"forces", "balance", "spectrum", "analyze", "concat", "waist", "weierstrass-demo", "presets"};
}

namespace {

bool needs_source(const std::string& command) { return command != "presets" && command != "weierstrass-demo"; }

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

struct Source {
    PeriodicConfiguration config;
    json echo;
};

Source load_source(const RunRequest& req) {
    if (req.preset) {
        FiniteBlock block = preset_from_string(*req.preset);
        return {PeriodicConfiguration(block), {{"preset", *req.preset}, {"config", block_to_json(block)}}};
    }
    std::ifstream in(*req.config_path);
    if (!in) throw UsageError("cannot read configuration file '" + *req.config_path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("malformed JSON in '" + *req.config_path + "': " + e.what());
    }
    FiniteBlock block = block_from_json(doc);
    return {PeriodicConfiguration(block), {{"config_path", *req.config_path}, {"config", block_to_json(block)}}};
}

std::vector<Boundary> boundaries(const std::string& s) {
    if (s == "both") return {Boundary::Truncate, Boundary::Wrap};
    return {boundary_from_string(s)};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write output file '" + path + "'");
    out << text;
    if (!out) throw UsageError("failed writing output file '" + path + "'");
}

void check_neck(const PeriodicConfiguration& config, NeckId neck) {
    const int n = config.neck_count(neck.k);
    if (neck.i < 1 || neck.i > n) {
        throw UsageError("neck (" + std::to_string(neck.k) + "," + std::to_string(neck.i) + ") out of range: layer has " +
                         std::to_string(n) + " necks");
    }
}

void flux_warnings(const ForceResidual& r, const TolerancePolicy& tol, std::vector<std::string>& warnings) {
    double g = 0.0;
    for (auto v : r.fluxes) g = std::max(g, std::abs(v));
    if (!tol.is_zero(g, 1.0)) {
        std::ostringstream os;
        os << std::setprecision(12) << "strict_G_zero_nonzero: max |G_k| = " << g
           << "; the literal reading G_k = 0 does not hold";
        warnings.push_back(os.str());
    }
}

json residual_payload(const PeriodicConfiguration& config, FluxMode mode, const TolerancePolicy& tol,
                      std::vector<std::string>& warnings) {
    const ForceResidual r = residual(config, mode, tol);
    flux_warnings(r, tol, warnings);
    if (!tol.is_zero(r.norm, 1.0)) {
        std::ostringstream os;
        os << std::setprecision(12) << "unbalanced: " << to_string(mode) << " residual norm " << r.norm;
        warnings.push_back(os.str());
    }
    return to_json(r);
}

json spectrum_block(const PeriodicConfiguration& config, const RunRequest& req, std::vector<std::string>& warnings) {
    json out = json::object();
    for (Boundary b : boundaries(req.boundary)) {
        const WindowSpectrum s = nondegeneracy_spectrum(config, req.window, b, req.tol);
        for (const auto& w : s.warnings) warnings.push_back(to_string(b) + ": " + w);
        out[to_string(b)] = to_json(s);
    }
    return out;
}

json cmd_presets() {
    json list = json::array();
    for (const auto& p : list_presets()) {
        list.push_back({{"name", p.name}, {"example", p.example}, {"description", p.description}});
    }
    return {{"presets", list}};
}

json cmd_forces(const Source& src, const RunRequest& req, std::vector<std::string>& warnings) {
    const FluxMode mode = flux_mode_from_string(req.mode);
    json payload = residual_payload(src.config, mode, req.tol, warnings);
    const Theorem1Report t1 = theorem1_hypotheses(src.config, req.tol);
    if (!t1.all_pass()) warnings.push_back("theorem1_hypotheses_fail: " + t1.note);
    payload["theorem1"] = to_json(t1);
    return payload;
}

json cmd_balance(const Source& src, const RunRequest& req, std::vector<std::string>& warnings) {
    SolverSettings settings;
    settings.max_iterations = req.max_iterations;
    settings.gauge = gauge_from_string(req.gauge);
    settings.target_mode = flux_mode_from_string(req.mode);
    settings.tol = req.tol;
    settings.verify_jacobian = req.verify_jacobian;
    const SolverOutcome outcome = newton_balance(src.config, settings);

    json payload = residual_payload(outcome.config, settings.target_mode, req.tol, warnings);
    payload["gauge"] = to_string(outcome.gauge);
    payload["iterations"] = outcome.iterations;
    payload["residual_history"] = outcome.residual_history;
    if (outcome.jacobian_discrepancy) payload["jacobian_discrepancy"] = *outcome.jacobian_discrepancy;
    payload["balanced_config"] = block_to_json(outcome.config.block());
    payload["spectrum"] = spectrum_block(outcome.config, req, warnings);
    return payload;
}

json cmd_spectrum(const Source& src, const RunRequest& req, std::vector<std::string>& warnings) {
    json payload = {{"window", spectrum_block(src.config, req, warnings)}};
    json trend = json::object();
    for (Boundary b : boundaries(req.boundary)) {
        json rows = json::array();
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (const auto& s : spectrum_trend(src.config, {1, 2, 4, 8}, b, req.tol)) {
            rows.push_back({{"window_periods", s.window_periods},
                            {"min_singular_value", s.min_singular_value},
                            {"condition_estimate", s.condition_estimate}});
            lo = first ? s.min_singular_value : std::min(lo, s.min_singular_value);
            hi = first ? s.min_singular_value : std::max(hi, s.min_singular_value);
            first = false;
        }
        trend[to_string(b)] = {{"rows", rows}, {"relative_variation", hi > 0.0 ? (hi - lo) / hi : 0.0}};
    }
    payload["trend"] = trend;
    payload["note"] = "finite-window singular values are a stability surrogate, not a proof of invertibility";
    return payload;
}

std::optional<int> height2_n(const RunRequest& req, const PeriodicConfiguration& config) {
    if (!req.preset || req.preset->rfind("height2", 0) != 0) return std::nullopt;
    return config.neck_count(1);
}

json cmd_analyze(const Source& src, const RunRequest& req, std::vector<std::string>& warnings) {
    const ResidueOptions opts{req.bits};
    const auto reports = classify_period(src.config, req.r_max, req.tol, opts);
    json necks = json::array();
    int swallowtail_necks = 0, conical = 0, higher = 0;
    for (const auto& r : reports) {
        necks.push_back(to_json(r, req.tol));
        for (const auto& f : r.prop1) {
            if (!f.consistent) {
                warnings.push_back("prop1_inconsistent: neck (" + std::to_string(r.neck.k) + "," +
                                   std::to_string(r.neck.i) + ") r=" + std::to_string(f.r));
            }
        }
        switch (r.classification) {
            case NeckClass::FourSwallowtails: ++swallowtail_necks; break;
            case NeckClass::AlmostConicalUpTo: ++conical; break;
            case NeckClass::HigherOrderFirstNonzero: ++higher; break;
        }
    }
    json payload = {{"r_max", req.r_max},
                    {"significand_bits", req.bits},
                    {"necks", necks},
                    {"summary",
                     {{"necks", reports.size()},
                      {"four_swallowtails", swallowtail_necks},
                      {"swallowtails", 4 * swallowtail_necks},
                      {"almost_conical_up_to_r_max", conical},
                      {"higher_order_first_nonzero", higher}}},
                    {"note", "necks k = 0..T; neck (T,i) repeats (0,i) one period up"}};
    if (auto n = height2_n(req, src.config)) {
        const ClosedFormComparison cmp = compare_closed_form_height2(*n, 1e-6, 1e-10, req.tol);
        for (const auto& w : cmp.warnings) warnings.push_back(w);
        payload["closed_form"] = to_json(cmp);
    }
    if (req.csv) {
        check_neck(src.config, req.neck);
        emit_wave_csv(src.config, req.neck, req.r, req.samples, *req.csv, opts);
        payload["csv"] = {{"path", *req.csv}, {"neck", {req.neck.k, req.neck.i}}, {"r", req.r}, {"samples", req.samples}};
    }
    return payload;
}

json cmd_concat(const Source& src, const RunRequest& req, std::vector<std::string>& warnings) {
    const ConcatRuleReport rule = concat_paper_rule(src.config.block(), req.m_first, req.m_last);
    if (!req.tol.is_zero(rule.max_deviation, 1.0)) {
        std::ostringstream os;
        os << std::setprecision(12) << "concat_rule_deviation: parity sign rule differs from p-space stacking by "
           << rule.max_deviation;
        warnings.push_back(os.str());
    }
    const Theorem1Report t1 = theorem1_hypotheses(src.config, req.tol);
    if (!t1.all_pass()) warnings.push_back("theorem1_hypotheses_fail: " + t1.note);
    return {{"rule", to_json(rule)}, {"theorem1", to_json(t1)}};
}

json cmd_waist(const Source& src, const RunRequest& req) {
    check_neck(src.config, req.neck);
    const WaistCurve w = waist_curve(src.config, req.neck, req.t, req.rays);
    json payload = to_json(w);
    payload["note"] = "leading-order singular curve in the parameter plane of sphere k";
    if (req.csv) {
        std::ostringstream os;
        os << std::setprecision(17) << "x1,x2,x3\n";
        for (auto z : w.points) os << z.real() << ',' << z.imag() << ",0\n";
        write_text(*req.csv, os.str());
        payload["csv"] = {{"path", *req.csv}, {"rows", w.points.size()}};
    }
    return payload;
}

json cmd_weierstrass_demo(const std::optional<Source>& src, const RunRequest& req, std::vector<std::string>& warnings) {
    WeierstrassData catenoid{RationalFunction{SimplePoleFunction{}, {0.0, 1.0}},
                             RationalFunction{SimplePoleFunction({{0.0, 1.0}}), {}},
                             DivisorDeclaration{{{0.0, 1}}, {}, {}, {0.0}}};
    const auto circle = circle_polyline(0.0, 1.0, std::max(16, req.samples));
    const PeriodResidual period = period_residual(catenoid, circle, {}, req.tol);
    const auto waist = integrate_immersion(catenoid, circle, {}, req.tol);
    double collapse = 0.0;
    for (const auto& p : waist) collapse = std::max({collapse, std::abs(p.x1), std::abs(p.x2), std::abs(p.x3)});

    std::vector<Complex> radial;
    for (int j = 0; j <= 16; ++j) radial.emplace_back(std::exp(j / 16.0), 0.0);
    const auto up = integrate_immersion(catenoid, radial, {}, req.tol);
    double radial_err = 0.0;
    json profile = json::array();
    for (std::size_t j = 0; j < up.size(); ++j) {
        radial_err = std::max(radial_err, std::abs(up[j].x3 - std::log(radial[j].real())));
        profile.push_back(to_json(up[j]));
    }
    const DivisorReport div = verify_divisor_condition(catenoid);
    if (!div.pass()) {
        for (const auto& p : div.problems) warnings.push_back("divisor: " + p);
    }

    json payload = {{"data", "g = z, dh = dz/z"},
                    {"period_residual",
                     {{"horizontal", complex_to_json(period.horizontal)}, {"vertical", period.vertical}}},
                    {"unit_circle_max_deviation_from_origin", collapse},
                    {"radial_profile", profile},
                    {"radial_x3_max_error_vs_log", radial_err},
                    {"divisor_check", {{"pass", div.pass()}, {"problems", div.problems}}}};

    if (src) {
        const SphereCentralData central = central_sphere_data(src->config, 0, req.t);
        json a = json::array(), b = json::array();
        for (auto z : central.a_points) a.push_back(complex_to_json(z));
        for (auto z : central.b_points) b.push_back(complex_to_json(z));
        payload["central_sphere"] = {{"k", central.k}, {"t", central.t},   {"a_points", a},
                                     {"b_points", b},  {"alpha", central.alpha}, {"beta", central.beta},
                                     {"even", central.even},
                                     {"note", "central parameters; leading-order data only"}};
    }
    if (req.csv) {
        std::ostringstream os;
        os << std::setprecision(17) << "x1,x2,x3\n";
        for (const auto& p : up) os << p.x1 << ',' << p.x2 << ',' << p.x3 << '\n';
        write_text(*req.csv, os.str());
        payload["csv"] = {{"path", *req.csv}, {"rows", up.size()}};
    }
    return payload;
}

}  // namespace

void RunRequest::validate() const {
    const auto names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
        throw UsageError("unknown command '" + command + "'");
    }
    if (preset && config_path) throw UsageError("give exactly one of --preset and --config");
    if (needs_source(command) && !preset && !config_path) {
        throw UsageError("command '" + command + "' needs --preset or --config");
    }
    tol.validate();
    if (r_max < 1 || r_max > 32) throw UsageError("--rmax must be in [1, 32]");
    if (window < 1) throw UsageError("--window must be >= 1");
    if (!(t > 0.0 && t < 1.0)) throw UsageError("--t must be in (0, 1)");
    if (samples < 8) throw UsageError("--samples must be >= 8");
    if (rays < 16) throw UsageError("--rays must be >= 16");
    if (bits < 53 || bits > 4096) throw UsageError("--bits must be in [53, 4096]");
    if (r < 1 || r > 32) throw UsageError("--r must be in [1, 32]");
    if (max_iterations < 1) throw UsageError("--max-iterations must be >= 1");
    if (m_last < m_first) throw UsageError("--m-last must be >= --m-first");
    if (boundary != "both") boundary_from_string(boundary);
    flux_mode_from_string(mode);
    gauge_from_string(gauge);
}

std::string RunReport::dump() const { return document.dump(2) + "\n"; }

RunReport run(const RunRequest& req) {
    req.validate();

    std::optional<Source> src;
    if (req.preset || req.config_path) src = load_source(req);

    std::vector<std::string> warnings;
    json payload;
    if (req.command == "presets") payload = cmd_presets();
    else if (req.command == "forces") payload = cmd_forces(*src, req, warnings);
    else if (req.command == "balance") payload = cmd_balance(*src, req, warnings);
    else if (req.command == "spectrum") payload = cmd_spectrum(*src, req, warnings);
    else if (req.command == "analyze") payload = cmd_analyze(*src, req, warnings);
    else if (req.command == "concat") payload = cmd_concat(*src, req, warnings);
    else if (req.command == "waist") payload = cmd_waist(*src, req);
    else payload = cmd_weierstrass_demo(src, req, warnings);

    json input = src ? src->echo : json::object();
    input["command"] = req.command;
    input["parameters"] = {{"rmax", req.r_max},   {"window", req.window},  {"t", req.t},
                           {"samples", req.samples}, {"rays", req.rays},    {"mode", req.mode},
                           {"boundary", req.boundary}, {"gauge", req.gauge}, {"bits", req.bits},
                           {"neck", {req.neck.k, req.neck.i}}, {"r", req.r},
                           {"m_first", req.m_first}, {"m_last", req.m_last},
                           {"max_iterations", req.max_iterations}};

    RunReport report;
    report.warnings = warnings;
    report.document = {{"schema", kReportSchema},
                       {"tool_version", tool_version()},
                       {"command", req.command},
                       {"input", input},
                       {"tolerance", to_json(req.tol)},
                       {"warnings", warnings},
                       {"payload", payload}};
    if (req.timestamp) report.document["timestamp"] = iso_timestamp();
    if (req.out) write_text(*req.out, report.dump());
    return report;
}

std::string wave_csv(const PeriodicConfiguration& config, NeckId neck, int r, int samples,
                     const ResidueOptions& options) {
    if (samples < 8) throw UsageError("samples must be >= 8");
    const TrigWave wave = r_wave(config, neck, r, options);
    std::ostringstream os;
    os << std::setprecision(17) << "theta,value\n";
    for (int j = 0; j < samples; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / samples;
        os << theta << ',' << wave(theta) << '\n';
    }
    return os.str();
}

void emit_wave_csv(const PeriodicConfiguration& config, NeckId neck, int r, int samples, const std::string& path,
                   const ResidueOptions& options) {
    write_text(path, wave_csv(config, neck, r, samples, options));
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e)) return 3;
    if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const SolverError*>(&e)) return 2;
    return 2;
}

}  // namespace maxface::cli
