#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxface/configuration.hpp"

namespace maxface {

/// Which reading of "balanced" the residual encodes.
enum class FluxMode {
    StrictGZero,  ///< F~ taken literally: G_k and F_{k,i>=2} must vanish
    UniformFlux,  ///< G_{k+1} - G_k and every F_{k,i} must vanish
};

enum class Gauge { FixFirstL, FixTranslationC };
enum class Boundary { Truncate, Wrap };

std::string to_string(FluxMode mode);
std::string to_string(Gauge gauge);
std::string to_string(Boundary boundary);
FluxMode flux_mode_from_string(const std::string& s);
Gauge gauge_from_string(const std::string& s);
Boundary boundary_from_string(const std::string& s);

/// F_{k,i}; i is the 1-based neck index in layer k.
Complex force(const PeriodicConfiguration& config, int k, int i, const TolerancePolicy& tol = {});
/// G_k = sum_{i,j} c_k c_{k-1} / (p_{k,i} - p_{k-1,j})
Complex interlayer_flux(const PeriodicConfiguration& config, int k, const TolerancePolicy& tol = {});

struct ForceResidual {
    FluxMode mode = FluxMode::UniformFlux;
    std::vector<Complex> fluxes;               ///< G_k, k = 1..T
    std::vector<std::vector<Complex>> forces;  ///< F_{k,1..n_k}, k = 1..T
    std::vector<Complex> entries;              ///< what the norm is taken over
    double norm = 0.0;                         ///< max modulus over entries
};

ForceResidual residual(const PeriodicConfiguration& config, FluxMode mode, const TolerancePolicy& tol = {});

struct SolverSettings {
    int max_iterations = 50;
    bool damping = true;
    double backtrack = 0.5;
    /// Smallest step fraction tried before giving up.
    double min_step = 1.0 / 1048576.0;
    Gauge gauge = Gauge::FixFirstL;
    FluxMode target_mode = FluxMode::UniformFlux;
    TolerancePolicy tol{};
    /// Compare the analytic Jacobian with forward differences at every iterate.
    bool verify_jacobian = false;
};

struct SolverOutcome {
    PeriodicConfiguration config;
    int iterations = 0;
    std::vector<double> residual_history;
    Gauge gauge = Gauge::FixFirstL;
    /// max |J - J_fd| / max(1, |J|) over the run; set only with verify_jacobian.
    std::optional<double> jacobian_discrepancy;
};

/// Damped complex Newton on the uniform-flux system over one period. Unknowns
/// are the (l, u) entries of one period minus the gauge-fixed one.
SolverOutcome newton_balance(const PeriodicConfiguration& start, const SolverSettings& settings = {});

struct WindowSpectrum {
    int window_periods = 1;
    Boundary boundary = Boundary::Truncate;
    double min_singular_value = 0.0;
    double max_singular_value = 0.0;
    double condition_estimate = 0.0;
    int dimension = 0;  ///< complex unknowns in the window
    double residual_norm = 0.0;
    std::vector<std::string> warnings;
};

/// Singular values of d F~ / d U (real/imaginary split) over W periods.
/// A finite-window surrogate for invertibility on l-infinity.
WindowSpectrum nondegeneracy_spectrum(const PeriodicConfiguration& config, int window_periods, Boundary boundary,
                                      const TolerancePolicy& tol = {});

std::vector<WindowSpectrum> spectrum_trend(const PeriodicConfiguration& config, const std::vector<int>& windows,
                                           Boundary boundary, const TolerancePolicy& tol = {});

}  // namespace maxface
