#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "maxface/errors.hpp"
#include "maxface_cli/run.hpp"

namespace {

maxface::NeckId parse_neck(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw maxface::UsageError("--neck expects k,i");
    try {
        return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw maxface::UsageError("--neck expects k,i");
    }
}

}  // namespace

int main(int argc, char** argv) {
    using maxface::cli::RunRequest;

    CLI::App app{"maxface: configuration balance, neck singularities and Weierstrass checks"};
    app.set_version_flag("--version", maxface::cli::tool_version());
    app.require_subcommand(1, 1);

    RunRequest req;
    std::string preset, config, out, csv, neck = "1,1";
    double tol_abs = req.tol.zero_abs, tol_rel = req.tol.zero_rel, newton = req.tol.newton_resid;
    bool no_timestamp = false;

    const std::map<std::string, std::string> about{
        {"forces", "forces F_{k,i}, fluxes G_k and the residual norm"},
        {"balance", "Newton-balance a configuration and report its window spectrum"},
        {"spectrum", "finite-window Jacobian singular values and their trend over W"},
        {"analyze", "classify every neck of one period from the waves R^(r)"},
        {"concat", "compare the parity sign rule for stacking blocks with p-space stacking"},
        {"waist", "trace the leading-order singular curve around a neck"},
        {"weierstrass-demo", "Lorentzian catenoid checks and optional central sphere data"},
        {"presets", "list the built-in configurations"},
    };
    for (const auto& name : maxface::cli::command_names()) {
        CLI::App* sub = app.add_subcommand(name, about.at(name));
        sub->add_option("--preset", preset, "preset, e.g. height2:n=3, height3, chain:h=2,a=1");
        sub->add_option("--config", config, "configuration JSON file");
        sub->add_option("--rmax", req.r_max, "highest order r for neck analysis");
        sub->add_option("--tol", tol_abs, "absolute zero tolerance");
        sub->add_option("--tol-rel", tol_rel, "relative zero tolerance");
        sub->add_option("--newton-tol", newton, "Newton residual target");
        sub->add_option("--window", req.window, "window size in periods");
        sub->add_option("--t", req.t, "neck size parameter");
        sub->add_option("--samples", req.samples, "CSV samples");
        sub->add_option("--rays", req.rays, "rays for waist tracing");
        sub->add_option("--mode", req.mode, "uniform-flux | strict-g-zero");
        sub->add_option("--boundary", req.boundary, "truncate | wrap | both");
        sub->add_option("--gauge", req.gauge, "fix-first-l | fix-translation-c");
        sub->add_option("--bits", req.bits, "significand bits for residues");
        sub->add_option("--neck", neck, "neck as k,i");
        sub->add_option("--r", req.r, "order r for the wave CSV");
        sub->add_option("--m-first", req.m_first, "first block index for concat");
        sub->add_option("--m-last", req.m_last, "last block index for concat");
        sub->add_option("--max-iterations", req.max_iterations, "Newton iteration cap");
        sub->add_flag("--verify-jacobian", req.verify_jacobian, "finite-difference Jacobian check");
        sub->add_option("--out", out, "write the JSON report here instead of stdout");
        sub->add_option("--csv", csv, "CSV output path");
        sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        req.command = app.get_subcommands().front()->get_name();
        if (!preset.empty()) req.preset = preset;
        if (!config.empty()) req.config_path = config;
        if (!out.empty()) req.out = out;
        if (!csv.empty()) req.csv = csv;
        req.tol = {tol_abs, tol_rel, newton};
        req.neck = parse_neck(neck);
        req.timestamp = !no_timestamp;

        const auto report = maxface::cli::run(req);
        if (!req.out) std::cout << report.dump();
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return maxface::cli::exit_code_for(e);
    }
}
