#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "maxface/errors.hpp"
#include "maxface/json_io.hpp"
#include "maxface/presets.hpp"
#include "maxface_cli/run.hpp"

using namespace maxface;
using namespace maxface::cli;
namespace fs = std::filesystem;

namespace {

RunRequest request(const std::string& command, const std::string& preset) {
    RunRequest r;
    r.command = command;
    if (!preset.empty()) r.preset = preset;
    r.timestamp = false;
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("report envelope") {
    const auto rep = run(request("forces", "height2:n=2"));
    const auto& d = rep.document;
    CHECK(d["schema"] == "maxface-report/1");
    CHECK(d["tool_version"] == tool_version());
    CHECK(d["input"]["preset"] == "height2:n=2");
    CHECK(d["tolerance"]["zero_abs"] == 1e-10);
    CHECK_FALSE(d.contains("timestamp"));
    CHECK(d["payload"]["mode"] == "uniform_flux");
    REQUIRE_FALSE(rep.warnings.empty());
    CHECK(rep.warnings.front().rfind("strict_G_zero_nonzero", 0) == 0);

    auto stamped = request("presets", "");
    stamped.timestamp = true;
    CHECK(run(stamped).document.contains("timestamp"));
}

TEST_CASE("report examples") {
    const auto h3 = run(request("analyze", "height3")).document["payload"];
    CHECK(h3["summary"]["necks"] == 6);

    auto bal = request("balance", "height2:n=2");
    bal.mode = "uniform-flux";
    CHECK(run(bal).document["payload"]["residual_norm"].get<double>() < 1e-12);

    for (const auto& n : run(request("analyze", "chain:h=1,a=1")).document["payload"]["necks"]) {
        CHECK(n["classification"] == "AlmostConicalUpTo");
        CHECK(n["r_max"] == 8);
    }

    const auto h2 = run(request("analyze", "height2:n=2"));
    bool mismatch = false;
    for (const auto& w : h2.warnings) mismatch = mismatch || w.rfind("closed_form_mismatch", 0) == 0;
    CHECK(mismatch);
}

TEST_CASE("deterministic reports") {
    for (const char* cmd : {"forces", "analyze", "spectrum", "concat", "balance"}) {
        const auto a = run(request(cmd, "height3")).dump();
        const auto b = run(request(cmd, "height3")).dump();
        CHECK(a == b);
    }
}

TEST_CASE("usage errors") {
    CHECK_THROWS_AS(run(request("frobnicate", "height3")), UsageError);
    CHECK_THROWS_AS(run(request("analyze", "")), UsageError);
    CHECK_THROWS_AS(run(request("analyze", "height9")), UsageError);
    auto both = request("analyze", "height3");
    both.config_path = "x.json";
    CHECK_THROWS_AS(run(both), UsageError);
    auto w = request("spectrum", "height3");
    w.window = 0;
    CHECK_THROWS_AS(run(w), UsageError);
    auto s = request("analyze", "height3");
    s.samples = 4;
    CHECK_THROWS_AS(run(s), UsageError);
    auto o = request("forces", "height3");
    o.out = "/nonexistent-dir/report.json";
    CHECK_THROWS_AS(run(o), UsageError);

    UsageError u("x");
    DomainError dm("x");
    SolverError so("x");
    CHECK(exit_code_for(u) == 3);
    CHECK(exit_code_for(dm) == 2);
    CHECK(exit_code_for(so) == 2);
}

TEST_CASE("config files") {
    const fs::path dir = fs::temp_directory_path() / "maxface_cli_test";
    fs::create_directories(dir);
    const fs::path good = dir / "h3.json";
    std::ofstream(good) << block_to_json(preset("height3")).dump();
    auto r = request("forces", "");
    r.config_path = good.string();
    CHECK(run(r).document["payload"]["residual_norm"].get<double>() < 1e-12);

    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{ not json";
    r.config_path = bad.string();
    CHECK_THROWS_AS(run(r), UsageError);

    std::ofstream(bad) << R"({"schema":"other/1","block":{}})";
    CHECK_THROWS_AS(run(r), UsageError);

    const FiniteBlock b = block_from_json(block_to_json(preset("height2", {4})));
    CHECK(b.layer(1).size() == 4);
    fs::remove_all(dir);
}

TEST_CASE("wave csv") {
    const PeriodicConfiguration h3(preset("height3"));
    const TrigWave w = r_wave(h3, {1, 1}, 1);
    const auto rows = lines(wave_csv(h3, {1, 1}, 1, 8));
    REQUIRE(rows.size() == 9);
    CHECK(rows[0] == "theta,value");
    // theta = 0, pi/2, pi, 3pi/2 sit at even rows; sin(2 theta) vanishes there
    const double expect[4] = {w.cos_coeff, -w.cos_coeff, w.cos_coeff, -w.cos_coeff};
    for (int j = 0; j < 4; ++j) {
        const auto& row = rows[static_cast<std::size_t>(1 + 2 * j)];
        CHECK(std::stod(row.substr(row.find(',') + 1)) == doctest::Approx(expect[j]).epsilon(1e-12));
    }
    for (std::size_t j = 1; j < 9; ++j) {
        const auto zero = lines(wave_csv(h3, {0, 1}, 1, 8))[j];
        CHECK(std::abs(std::stod(zero.substr(zero.find(',') + 1))) < 1e-12);
    }
    CHECK_THROWS_AS(wave_csv(h3, {1, 1}, 1, 4), UsageError);

    const fs::path path = fs::temp_directory_path() / "maxface_wave.csv";
    auto req = request("analyze", "height3");
    req.csv = path.string();
    req.samples = 16;
    const auto rep = run(req);
    CHECK(rep.document["input"]["parameters"]["samples"] == 16);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(lines(ss.str()).size() == 17);
    fs::remove(path);
}

TEST_CASE("other commands run") {
    CHECK(run(request("presets", "")).document["payload"]["presets"].size() == 3);
    const auto demo = run(request("weierstrass-demo", "")).document["payload"];
    CHECK(demo["unit_circle_max_deviation_from_origin"].get<double>() < 1e-8);
    auto waist = request("waist", "chain:h=1,a=1");
    waist.neck = {0, 1};
    CHECK(run(waist).document["payload"]["points"].size() == 257);
    const auto concat = run(request("concat", "height3"));
    bool dev = false;
    for (const auto& w : concat.warnings) dev = dev || w.rfind("concat_rule_deviation", 0) == 0;
    CHECK(dev);
}
