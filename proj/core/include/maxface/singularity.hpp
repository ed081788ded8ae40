#pragma once

#include <string>
#include <vector>

#include "maxface/configuration.hpp"
#include "maxface/pole_function.hpp"

namespace maxface {

/// Neck (k, i) joins sphere k to sphere k+1; i is 1-based.
struct NeckId {
    int k = 0;
    int i = 1;
};

/// omega_k/dz: poles p_{k-1,i} - p_{k-1,1} with weight +c_{k-1} followed by
/// poles p_{k,i} - p_{k-1,1} with weight -c_k.
struct OmegaForm {
    int k = 0;
    int lower_count = 0;  ///< n_{k-1}; poles [lower_count, size) belong to layer k
    SimplePoleFunction function;
};

OmegaForm omega(const PeriodicConfiguration& config, int k, const TolerancePolicy& tol = {});

struct ResiduePair {
    int r = 1;
    Complex X;  ///< Res_{p_{k,i} - p_{k-1,1}} omega_k^{r+2}
    Complex Y;  ///< Res_{p_{k,i} - p_{k,1}} omega_{k+1}^{r+2}
    double scale = 0.0;
};

ResiduePair neck_residue_pair(const PeriodicConfiguration& config, NeckId neck, int r,
                              const ResidueOptions& options = {});

/// theta -> cos_coeff * cos(m theta) + sin_coeff * sin(m theta)
struct TrigWave {
    int m = 2;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
    /// Magnitude of the largest intermediate term behind the coefficients.
    double scale = 0.0;

    double operator()(double theta) const;
    double amplitude() const;
};

TrigWave r_wave(const PeriodicConfiguration& config, NeckId neck, int r, const ResidueOptions& options = {});
TrigWave wave_from_residues(int k, const ResiduePair& pair);

struct WaveZeros {
    bool identically_zero = false;
    std::vector<double> angles;  ///< sorted, in [0, 2 pi)
};

WaveZeros wave_zeros(const TrigWave& wave, const TolerancePolicy& tol = {});

enum class NeckClass { FourSwallowtails, AlmostConicalUpTo, HigherOrderFirstNonzero };
std::string to_string(NeckClass c);

struct Prop1Flags {
    int r = 1;
    bool conjugate_relation = false;  ///< X == (-1)^{r+2} conj(Y)
    bool parity = false;              ///< Y imaginary for even r, real for odd r
    bool wave_zero = false;
    /// (a) and (b) imply (c); false only if that implication broke.
    bool consistent = true;
};

struct NeckReport {
    NeckId neck;
    int r_max = 8;
    std::vector<ResiduePair> residue_pairs;
    std::vector<TrigWave> waves;
    NeckClass classification = NeckClass::AlmostConicalUpTo;
    int first_nonzero_r = 0;     ///< 0 when every wave up to r_max vanished
    std::vector<double> zeros;   ///< zeros of the first nonzero wave
    std::vector<Prop1Flags> prop1;  ///< filled when n_k == 1
    std::vector<std::string> notes;
};

NeckReport classify_neck(const PeriodicConfiguration& config, NeckId neck, int r_max = 8,
                         const TolerancePolicy& tol = {}, const ResidueOptions& options = {});

std::vector<NeckReport> classify_period(const PeriodicConfiguration& config, int r_max = 8,
                                        const TolerancePolicy& tol = {}, const ResidueOptions& options = {});

/// Requires n_k == 1 at the neck's layer.
std::vector<Prop1Flags> prop1_diagnostics(const PeriodicConfiguration& config, NeckId neck, int r_max = 8,
                                          const TolerancePolicy& tol = {}, const ResidueOptions& options = {});

/// The tabulated r = 1 closed form for odd-layer necks of the height-2 family:
/// 6 cos 2theta / (n (1 + cot^2)^2) * (cot - R) with cot = cot(i' pi/(n+1)).
TrigWave closed_form_height2(int n, int neck_index);

struct ClosedFormEntry {
    int neck_index = 1;
    TrigWave engine;
    TrigWave closed_form;
    bool agree = false;
};

struct ClosedFormComparison {
    int n = 2;
    std::vector<ClosedFormEntry> entries;
    bool all_agree = true;
    std::vector<std::string> warnings;
};

/// Compares closed_form_height2 with r_wave on layer 1 of height2(n).
/// Cosine coefficients must agree to `rel_tol`; sine coefficients must both be below `sin_tol`.
ClosedFormComparison compare_closed_form_height2(int n, double rel_tol = 1e-6, double sin_tol = 1e-10,
                                                 const TolerancePolicy& tol = {});

}  // namespace maxface
