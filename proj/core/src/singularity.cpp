#include "maxface/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "maxface/presets.hpp"

namespace maxface {

namespace {

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

bool is_odd(int k) { return (k % 2) != 0; }

void check_neck(const PeriodicConfiguration& config, NeckId neck) {
    if (neck.i < 1 || neck.i > config.neck_count(neck.k)) {
        throw UsageError("neck (" + std::to_string(neck.k) + "," + std::to_string(neck.i) + ") does not exist");
    }
}

}  // namespace

OmegaForm omega(const PeriodicConfiguration& config, int k, const TolerancePolicy& tol) {
    const Layer lower = config.layer_at(k - 1);
    const Layer upper = config.layer_at(k);
    const Complex base = lower[0];
    std::vector<Pole> poles;
    for (auto p : lower.points()) poles.push_back({p - base, Complex{lower.weight(), 0.0}});
    for (auto p : upper.points()) poles.push_back({p - base, Complex{-upper.weight(), 0.0}});
    OmegaForm out{k, lower.size(), SimplePoleFunction(std::move(poles), tol.zero_abs)};
    if (std::abs(out.function.coefficient_sum()) > 1e-14) {
        throw std::logic_error("omega coefficients do not sum to zero");
    }
    return out;
}

ResiduePair neck_residue_pair(const PeriodicConfiguration& config, NeckId neck, int r, const ResidueOptions& options) {
    if (r < 1) throw UsageError("order r must be >= 1");
    check_neck(config, neck);
    const int m = r + 2;
    const OmegaForm below = omega(config, neck.k);
    const OmegaForm above = omega(config, neck.k + 1);
    const ResidueValue x = residue_of_power_tracked(below.function, below.lower_count + neck.i - 1, m, options);
    const ResidueValue y = residue_of_power_tracked(above.function, neck.i - 1, m, options);
    return {r, x.value, y.value, std::max(x.scale, y.scale)};
}

double TrigWave::operator()(double theta) const {
    return cos_coeff * std::cos(m * theta) + sin_coeff * std::sin(m * theta);
}

double TrigWave::amplitude() const { return std::max(std::abs(cos_coeff), std::abs(sin_coeff)); }

TrigWave wave_from_residues(int k, const ResiduePair& pair) {
    // Im(e^{i m t} P - e^{-i m t} Q) = (Im P - Im Q) cos(m t) + (Re P + Re Q) sin(m t)
    const Complex P = is_odd(k) ? std::conj(pair.X) : pair.X;
    const Complex Q = is_odd(k) ? pair.Y : std::conj(pair.Y);
    const double scale = std::max({pair.scale, std::abs(pair.X), std::abs(pair.Y)});
    return {pair.r + 1, P.imag() - Q.imag(), P.real() + Q.real(), scale};
}

TrigWave r_wave(const PeriodicConfiguration& config, NeckId neck, int r, const ResidueOptions& options) {
    return wave_from_residues(neck.k, neck_residue_pair(config, neck, r, options));
}

WaveZeros wave_zeros(const TrigWave& wave, const TolerancePolicy& tol) {
    using std::numbers::pi;
    WaveZeros out;
    if (tol.is_zero(wave.amplitude(), wave.scale)) {
        out.identically_zero = true;
        return out;
    }
    // A cos(m t) + B sin(m t) = rho cos(m t - phi)
    const double phi = std::atan2(wave.sin_coeff, wave.cos_coeff);
    const int m = wave.m;
    for (int j = 0; j < 2 * m; ++j) {
        double t = std::fmod((phi + pi / 2 + j * pi) / m, 2 * pi);
        if (t < 0) t += 2 * pi;
        if (t >= 2 * pi - 1e-15) t = 0.0;
        out.angles.push_back(t);
    }
    std::sort(out.angles.begin(), out.angles.end());
    return out;
}

std::string to_string(NeckClass c) {
    switch (c) {
        case NeckClass::FourSwallowtails:
            return "FourSwallowtails";
        case NeckClass::AlmostConicalUpTo:
            return "AlmostConicalUpTo";
        case NeckClass::HigherOrderFirstNonzero:
            return "HigherOrderFirstNonzero";
    }
    return "unknown";
}

namespace {

std::vector<Prop1Flags> prop1_from_pairs(const std::vector<ResiduePair>& pairs, int k, const TolerancePolicy& tol) {
    std::vector<Prop1Flags> flags;
    for (const auto& p : pairs) {
        const double thr = tol.threshold(std::max({p.scale, std::abs(p.X), std::abs(p.Y)}));
        Prop1Flags f;
        f.r = p.r;
        f.conjugate_relation = std::abs(p.X - parity(p.r + 2) * std::conj(p.Y)) <= thr;
        f.parity = (p.r % 2 == 0) ? std::abs(p.Y.real()) <= thr : std::abs(p.Y.imag()) <= thr;
        f.wave_zero = wave_zeros(wave_from_residues(k, p), tol).identically_zero;
        f.consistent = !(f.conjugate_relation && f.parity) || f.wave_zero;
        flags.push_back(f);
    }
    return flags;
}

}  // namespace

NeckReport classify_neck(const PeriodicConfiguration& config, NeckId neck, int r_max, const TolerancePolicy& tol,
                         const ResidueOptions& options) {
    if (r_max < 1) throw UsageError("r_max must be >= 1");
    tol.validate();
    check_neck(config, neck);
    NeckReport rep;
    rep.neck = neck;
    rep.r_max = r_max;
    for (int r = 1; r <= r_max; ++r) {
        rep.residue_pairs.push_back(neck_residue_pair(config, neck, r, options));
        rep.waves.push_back(wave_from_residues(neck.k, rep.residue_pairs.back()));
    }
    for (const auto& w : rep.waves) {
        const WaveZeros z = wave_zeros(w, tol);
        if (z.identically_zero) continue;
        rep.first_nonzero_r = w.m - 1;
        rep.zeros = z.angles;
        break;
    }
    if (rep.first_nonzero_r == 1) {
        rep.classification = NeckClass::FourSwallowtails;
    } else if (rep.first_nonzero_r == 0) {
        rep.classification = NeckClass::AlmostConicalUpTo;
        rep.notes.push_back("every R^(r) vanished for r <= " + std::to_string(r_max) +
                            "; almost-conical verdict is truncated at that order");
    } else {
        rep.classification = NeckClass::HigherOrderFirstNonzero;
        rep.notes.push_back("first nonzero wave at r = " + std::to_string(rep.first_nonzero_r) +
                            "; no geometric singularity type is asserted");
    }
    if (config.neck_count(neck.k) == 1) rep.prop1 = prop1_from_pairs(rep.residue_pairs, neck.k, tol);
    return rep;
}

std::vector<NeckReport> classify_period(const PeriodicConfiguration& config, int r_max, const TolerancePolicy& tol,
                                        const ResidueOptions& options) {
    std::vector<NeckReport> out;
    for (int k = 0; k <= config.period(); ++k)
        for (int i = 1; i <= config.neck_count(k); ++i) out.push_back(classify_neck(config, {k, i}, r_max, tol, options));
    return out;
}

std::vector<Prop1Flags> prop1_diagnostics(const PeriodicConfiguration& config, NeckId neck, int r_max,
                                          const TolerancePolicy& tol, const ResidueOptions& options) {
    if (r_max < 1) throw UsageError("r_max must be >= 1");
    check_neck(config, neck);
    if (config.neck_count(neck.k) != 1) {
        throw UsageError("prop1 diagnostics need a single-neck layer; layer " + std::to_string(neck.k) + " has " +
                         std::to_string(config.neck_count(neck.k)));
    }
    std::vector<ResiduePair> pairs;
    for (int r = 1; r <= r_max; ++r) pairs.push_back(neck_residue_pair(config, neck, r, options));
    return prop1_from_pairs(pairs, neck.k, tol);
}

TrigWave closed_form_height2(int n, int neck_index) {
    using std::numbers::pi;
    if (n < 1) throw UsageError("height2 closed form needs n >= 1");
    if (neck_index < 1 || neck_index > n) throw UsageError("neck index must lie in 1..n");
    const double step = pi / (n + 1);
    const double si = std::sin(neck_index * step);
    const double cot = std::cos(neck_index * step) / si;
    double R = 0.0;
    for (int j = 1; j <= n; ++j) {
        if (j == neck_index) continue;
        R += std::sin((j - neck_index) * step) / (si * std::sin(j * step));
    }
    R /= n;
    const double denom = 1.0 + cot * cot;
    return {2, 6.0 / (n * denom * denom) * (cot - R), 0.0, 6.0 / (n * denom * denom) * std::max(std::abs(cot), std::abs(R))};
}

ClosedFormComparison compare_closed_form_height2(int n, double rel_tol, double sin_tol, const TolerancePolicy& tol) {
    const PeriodicConfiguration config(preset("height2", {.n = n}));
    ClosedFormComparison out;
    out.n = n;
    for (int i = 1; i <= n; ++i) {
        ClosedFormEntry e;
        e.neck_index = i;
        e.engine = r_wave(config, {1, i}, 1);
        e.closed_form = closed_form_height2(n, i);
        const bool both_zero = wave_zeros(e.engine, tol).identically_zero && wave_zeros(e.closed_form, tol).identically_zero;
        const double a = e.engine.cos_coeff;
        const double b = e.closed_form.cos_coeff;
        const bool cos_ok = both_zero || std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
        const bool sin_ok = std::abs(e.engine.sin_coeff) < sin_tol && std::abs(e.closed_form.sin_coeff) < sin_tol;
        e.agree = cos_ok && sin_ok;
        if (!e.agree) {
            out.all_agree = false;
            out.warnings.push_back("closed_form_mismatch: n=" + std::to_string(n) + " neck (1," + std::to_string(i) +
                                   "): closed form cos coefficient " + std::to_string(b) + ", residue engine " +
                                   std::to_string(a));
        }
        out.entries.push_back(e);
    }
    return out;
}

}  // namespace maxface
