#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maxface/balance.hpp"
#include "maxface/numeric.hpp"
#include "maxface/singularity.hpp"

namespace maxface::cli {

inline constexpr const char* kReportSchema = "maxface-report/1";

std::string tool_version();

struct RunRequest {
    std::string command;
    std::optional<std::string> preset;
    std::optional<std::string> config_path;

    int r_max = 8;
    TolerancePolicy tol{};
    int window = 4;
    double t = 0.05;
    int samples = 720;
    int rays = 256;
    std::string mode = "uniform-flux";
    std::string boundary = "both";
    std::string gauge = "fix-first-l";
    int bits = 53;
    NeckId neck{1, 1};
    int r = 1;
    int m_first = 0;
    int m_last = 2;
    int max_iterations = 50;
    bool verify_jacobian = false;

    std::optional<std::string> out;
    std::optional<std::string> csv;
    bool timestamp = true;

    /// Throws UsageError when a field is out of range or the source is ambiguous.
    void validate() const;
};

std::vector<std::string> command_names();

struct RunReport {
    nlohmann::json document;
    std::vector<std::string> warnings;

    std::string dump() const;
};

/// Dispatches the request. Writes `out` and `csv` when set.
/// Throws UsageError, DomainError or SolverError.
RunReport run(const RunRequest& request);

/// "theta,value" rows for R^(r) at `samples` points uniform on [0, 2 pi).
std::string wave_csv(const PeriodicConfiguration& config, NeckId neck, int r, int samples,
                     const ResidueOptions& options = {});
void emit_wave_csv(const PeriodicConfiguration& config, NeckId neck, int r, int samples, const std::string& path,
                   const ResidueOptions& options = {});

/// 0 ok, 2 domain or solver failure, 3 usage error.
int exit_code_for(const std::exception& e);

}  // namespace maxface::cli
