#include "maxface/balance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace maxface {

namespace {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

struct PointRef {
    int k;
    int i;  // 1-based
};

// i == 1 addresses l_k, i >= 2 addresses u_{k,i}
struct UVar {
    int k;
    int i;
};

struct Row {
    Complex value{};
    std::vector<std::pair<UVar, Complex>> grad;
};

// d(p_a - p_b)/dU for neighbouring or equal layers, from
//   p_{k,i} - p_{k,j}   = (-1)^k (u_{k,i} - u_{k,j})
//   p_{k,i} - p_{k-1,j} = (-1)^k (u_{k,i} + l_k + u_{k-1,j})
//   p_{k,i} - p_{k+1,j} = (-1)^k (u_{k,i} + l_{k+1} + u_{k+1,j})
template <class Sink>
void diff_gradient(PointRef a, PointRef b, Sink&& sink) {
    const double s = parity(a.k);
    if (a.i >= 2) sink(UVar{a.k, a.i}, s);
    if (a.k == b.k) {
        if (b.i >= 2) sink(UVar{b.k, b.i}, -s);
        return;
    }
    sink(UVar{b.k == a.k - 1 ? a.k : a.k + 1, 1}, s);
    if (b.i >= 2) sink(UVar{b.k, b.i}, s);
}

class TermBuilder {
   public:
    TermBuilder(const PeriodicConfiguration& config, const TolerancePolicy& tol, bool with_gradient)
        : config_(config), tol_(tol), with_gradient_(with_gradient) {}

    void add(Row& row, double coef, PointRef a, PointRef b) const {
        const Complex d = config_.point(a.k, a.i) - config_.point(b.k, b.i);
        if (std::abs(d) <= tol_.zero_abs) {
            throw DomainError("coincident points (" + std::to_string(a.k) + "," + std::to_string(a.i) + ") and (" +
                              std::to_string(b.k) + "," + std::to_string(b.i) + ")");
        }
        row.value += coef / d;
        if (!with_gradient_) return;
        const Complex g = -coef / (d * d);
        diff_gradient(a, b, [&](UVar v, double sigma) { row.grad.emplace_back(v, sigma * g); });
    }

    Row force_row(int k, int i) const {
        const int n = config_.neck_count(k);
        if (i < 1 || i > n) throw UsageError("neck index out of range");
        const double ck = 1.0 / n;
        const int nu = config_.neck_count(k + 1);
        const int nl = config_.neck_count(k - 1);
        Row row;
        for (int j = 1; j <= n; ++j)
            if (j != i) add(row, 2.0 * ck * ck, {k, i}, {k, j});
        for (int j = 1; j <= nu; ++j) add(row, -ck / nu, {k, i}, {k + 1, j});
        for (int j = 1; j <= nl; ++j) add(row, -ck / nl, {k, i}, {k - 1, j});
        return row;
    }

    Row flux_row(int k) const {
        const int n = config_.neck_count(k);
        const int nl = config_.neck_count(k - 1);
        const double w = 1.0 / (static_cast<double>(n) * nl);
        Row row;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= nl; ++j) add(row, w, {k, i}, {k - 1, j});
        return row;
    }

   private:
    const PeriodicConfiguration& config_;
    const TolerancePolicy& tol_;
    bool with_gradient_;
};

Row difference(Row a, const Row& b) {
    a.value -= b.value;
    for (const auto& [v, g] : b.grad) a.grad.emplace_back(v, -g);
    return a;
}

// Column layout for (l_k, u_{k,2..n_k}) with k = 1..P over layers of `config`.
class ULayout {
   public:
    ULayout(const PeriodicConfiguration& config, int periods) : P_(periods * config.period()) {
        for (int k = 1; k <= P_; ++k) {
            offsets_.push_back(size_);
            size_ += config.neck_count(k);
        }
    }

    int size() const { return size_; }
    int span() const { return P_; }
    int column(int k, int i) const { return offsets_[static_cast<std::size_t>(k - 1)] + (i - 1); }

    /// Column and sign of a variable after folding or truncating into 1..P.
    std::optional<std::pair<int, double>> locate(UVar v, Boundary boundary) const {
        if (v.k >= 1 && v.k <= P_) return std::pair{column(v.k, v.i), 1.0};
        if (boundary == Boundary::Truncate) return std::nullopt;
        const int q = floor_div(v.k - 1, P_);
        // a p-periodic perturbation of period P has U_{k+qP} = (-1)^{qP} U_k
        return std::pair{column(v.k - q * P_, v.i), parity(q * P_)};
    }

   private:
    int P_;
    int size_ = 0;
    std::vector<int> offsets_;
};

void scatter(const Row& row, int r, const ULayout& layout, Boundary boundary, CMatrix& J) {
    for (const auto& [v, g] : row.grad) {
        if (auto loc = layout.locate(v, boundary)) J(r, loc->first) += loc->second * g;
    }
}

struct System {
    CVector values;
    CMatrix jacobian;
};

// Uniform-flux equations over one period: F_{k,i>=2} then G_{k+1} - G_k.
System uniform_system(const PeriodicConfiguration& config, const TolerancePolicy& tol) {
    const int T = config.period();
    const TermBuilder tb(config, tol, true);
    const ULayout layout(config, 1);
    std::vector<Row> rows;
    for (int k = 1; k <= T; ++k)
        for (int i = 2; i <= config.neck_count(k); ++i) rows.push_back(tb.force_row(k, i));
    std::vector<Row> fluxes;
    for (int k = 1; k <= T; ++k) fluxes.push_back(tb.flux_row(k));
    for (int k = 1; k < T; ++k) rows.push_back(difference(fluxes[k], fluxes[k - 1]));

    System sys{CVector::Zero(static_cast<Eigen::Index>(rows.size())),
               CMatrix::Zero(static_cast<Eigen::Index>(rows.size()), layout.size())};
    for (std::size_t r = 0; r < rows.size(); ++r) {
        sys.values(static_cast<Eigen::Index>(r)) = rows[r].value;
        scatter(rows[r], static_cast<int>(r), layout, Boundary::Wrap, sys.jacobian);
    }
    return sys;
}

// dU/dy for the gauge: columns of the identity minus the fixed entry.
CMatrix gauge_map(const PeriodicConfiguration& config, Gauge gauge) {
    const ULayout layout(config, 1);
    const int T = config.period();
    const int n = layout.size();
    const int fixed = gauge == Gauge::FixFirstL ? layout.column(1, 1) : layout.column(T, 1);
    CMatrix B = CMatrix::Zero(n, n - 1);
    for (int c = 0, y = 0; c < n; ++c) {
        if (c == fixed) continue;
        B(c, y++) = 1.0;
    }
    if (gauge == Gauge::FixTranslationC) {
        // C = sum_j (-1)^j l_j held fixed, l_T eliminated
        for (int j = 1; j < T; ++j) {
            const int col = layout.column(j, 1);
            const int y = col - (col > fixed ? 1 : 0);
            B(fixed, y) = -parity(T + j);
        }
    }
    return B;
}

UCoordinates apply_step(const UCoordinates& U, const PeriodicConfiguration& config, const CVector& dU) {
    const ULayout layout(config, 1);
    UCoordinates out = U;
    for (int k = 1; k <= config.period(); ++k) {
        out.l[k - 1] += dU(layout.column(k, 1));
        for (int i = 2; i <= config.neck_count(k); ++i) out.u[k - 1][i - 2] += dU(layout.column(k, i));
    }
    return out;
}

CVector flatten(const UCoordinates& U) {
    const auto flat = U.flattened();
    CVector v(static_cast<Eigen::Index>(flat.size()));
    for (std::size_t j = 0; j < flat.size(); ++j) v(static_cast<Eigen::Index>(j)) = flat[j];
    return v;
}

UCoordinates unflatten(const CVector& v, const UCoordinates& shape) {
    UCoordinates out = shape;
    Eigen::Index j = 0;
    for (std::size_t k = 0; k < out.l.size(); ++k) {
        out.l[k] = v(j++);
        for (auto& u : out.u[k]) u = v(j++);
    }
    return out;
}

double jacobian_discrepancy(const PeriodicConfiguration& config, const CMatrix& J, const TolerancePolicy& tol) {
    const UCoordinates U = u_coords_from_points(config);
    const CVector base = flatten(U);
    const Complex gauge = config.point(0, 1);
    const CVector f0 = uniform_system(config, tol).values;
    double worst = 0.0;
    for (Eigen::Index c = 0; c < base.size(); ++c) {
        const double h = 1e-7 * std::max(1.0, std::abs(base(c)));
        CVector shifted = base;
        shifted(c) += h;
        const PeriodicConfiguration moved = points_from_u(unflatten(shifted, U), gauge);
        const CVector fd = (uniform_system(moved, tol).values - f0) / h;
        for (Eigen::Index r = 0; r < J.rows(); ++r) {
            worst = std::max(worst, std::abs(J(r, c) - fd(r)) / std::max(1.0, std::abs(J(r, c))));
        }
    }
    return worst;
}

}  // namespace

std::string to_string(FluxMode mode) { return mode == FluxMode::StrictGZero ? "strict_G_zero" : "uniform_flux"; }
std::string to_string(Gauge gauge) { return gauge == Gauge::FixFirstL ? "fix_first_l" : "fix_translation_C"; }
std::string to_string(Boundary boundary) { return boundary == Boundary::Truncate ? "truncate" : "wrap"; }

FluxMode flux_mode_from_string(const std::string& s) {
    if (s == "strict_G_zero" || s == "strict-g-zero" || s == "strict") return FluxMode::StrictGZero;
    if (s == "uniform_flux" || s == "uniform-flux" || s == "uniform") return FluxMode::UniformFlux;
    throw UsageError("unknown flux mode '" + s + "'");
}

Gauge gauge_from_string(const std::string& s) {
    if (s == "fix_first_l" || s == "fix-first-l") return Gauge::FixFirstL;
    if (s == "fix_translation_C" || s == "fix-translation-c" || s == "fix_translation_c") return Gauge::FixTranslationC;
    throw UsageError("unknown gauge '" + s + "'");
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "truncate") return Boundary::Truncate;
    if (s == "wrap") return Boundary::Wrap;
    throw UsageError("unknown boundary policy '" + s + "'");
}

Complex force(const PeriodicConfiguration& config, int k, int i, const TolerancePolicy& tol) {
    return TermBuilder(config, tol, false).force_row(k, i).value;
}

Complex interlayer_flux(const PeriodicConfiguration& config, int k, const TolerancePolicy& tol) {
    return TermBuilder(config, tol, false).flux_row(k).value;
}

ForceResidual residual(const PeriodicConfiguration& config, FluxMode mode, const TolerancePolicy& tol) {
    const int T = config.period();
    const TermBuilder tb(config, tol, false);
    ForceResidual out;
    out.mode = mode;
    for (int k = 1; k <= T; ++k) {
        out.fluxes.push_back(tb.flux_row(k).value);
        std::vector<Complex> f;
        for (int i = 1; i <= config.neck_count(k); ++i) f.push_back(tb.force_row(k, i).value);
        out.forces.push_back(std::move(f));
    }
    for (int k = 1; k <= T; ++k) {
        const auto& f = out.forces[k - 1];
        if (mode == FluxMode::StrictGZero) {
            out.entries.push_back(out.fluxes[k - 1]);
            out.entries.insert(out.entries.end(), f.begin() + 1, f.end());
        } else {
            out.entries.push_back(out.fluxes[k % T] - out.fluxes[k - 1]);
            out.entries.insert(out.entries.end(), f.begin(), f.end());
        }
    }
    for (auto e : out.entries) out.norm = std::max(out.norm, std::abs(e));
    return out;
}

SolverOutcome newton_balance(const PeriodicConfiguration& start, const SolverSettings& settings) {
    if (settings.max_iterations < 1) throw UsageError("max_iterations must be >= 1");
    if (!(settings.backtrack > 0.0 && settings.backtrack < 1.0)) throw UsageError("backtrack factor must lie in (0, 1)");
    if (settings.target_mode != FluxMode::UniformFlux) {
        throw UsageError("newton_balance solves the uniform_flux system only; strict_G_zero is not square");
    }
    settings.tol.validate();
    const TolerancePolicy& tol = settings.tol;

    SolverOutcome out{start, 0, {}, settings.gauge, std::nullopt};
    const Complex gauge_point = start.point(0, 1);
    double norm = residual(out.config, FluxMode::UniformFlux, tol).norm;
    out.residual_history.push_back(norm);
    if (norm < tol.newton_resid) return out;

    const CMatrix B = gauge_map(start, settings.gauge);
    for (int iter = 1; iter <= settings.max_iterations; ++iter) {
        const System sys = uniform_system(out.config, tol);
        if (settings.verify_jacobian) {
            const double d = jacobian_discrepancy(out.config, sys.jacobian, tol);
            out.jacobian_discrepancy = std::max(out.jacobian_discrepancy.value_or(0.0), d);
        }
        const CMatrix Jy = sys.jacobian * B;
        if (Jy.rows() != Jy.cols()) {
            throw SolverError("gauge-fixed system is not square: " + std::to_string(Jy.rows()) + " equations, " +
                              std::to_string(Jy.cols()) + " unknowns");
        }
        if (Jy.rows() == 0) throw SolverError("no free unknowns but residual " + std::to_string(norm));
        Eigen::FullPivLU<CMatrix> lu(Jy);
        lu.setThreshold(1e-13);
        if (lu.rank() < Jy.cols()) {
            throw SolverError("singular Jacobian: rank " + std::to_string(lu.rank()) + " of " +
                              std::to_string(Jy.cols()));
        }
        const CVector dU = B * lu.solve(-sys.values);
        const UCoordinates U = u_coords_from_points(out.config);

        double lambda = 1.0;
        while (true) {
            bool accepted = false;
            try {
                PeriodicConfiguration trial = points_from_u(apply_step(U, out.config, lambda * dU), gauge_point);
                const double trial_norm = residual(trial, FluxMode::UniformFlux, tol).norm;
                if (!settings.damping || trial_norm < norm) {
                    out.config = std::move(trial);
                    norm = trial_norm;
                    accepted = true;
                }
            } catch (const DomainError&) {
                // coincident points: shrink the step
            }
            if (accepted) break;
            lambda *= settings.backtrack;
            if (lambda < settings.min_step) {
                throw SolverError("step length fell below the floor at iteration " + std::to_string(iter));
            }
        }
        out.iterations = iter;
        out.residual_history.push_back(norm);
        if (norm < tol.newton_resid) return out;
    }
    throw SolverError("iteration cap of " + std::to_string(settings.max_iterations) + " reached with residual " +
                      std::to_string(norm));
}

WindowSpectrum nondegeneracy_spectrum(const PeriodicConfiguration& config, int window_periods, Boundary boundary,
                                      const TolerancePolicy& tol) {
    if (window_periods < 1) throw UsageError("window must span at least one period");
    WindowSpectrum out;
    out.window_periods = window_periods;
    out.boundary = boundary;
    out.residual_norm = residual(config, FluxMode::UniformFlux, tol).norm;
    if (out.residual_norm > 1e-8) {
        out.warnings.push_back("configuration is not balanced (uniform-flux residual " +
                               std::to_string(out.residual_norm) + ")");
    }

    const TermBuilder tb(config, tol, true);
    const ULayout layout(config, window_periods);
    const int n = layout.size();
    CMatrix J = CMatrix::Zero(n, n);
    int r = 0;
    for (int k = 1; k <= layout.span(); ++k) {
        scatter(tb.flux_row(k), r++, layout, boundary, J);
        for (int i = 2; i <= config.neck_count(k); ++i) scatter(tb.force_row(k, i), r++, layout, boundary, J);
    }

    Eigen::MatrixXd R(2 * n, 2 * n);
    R << J.real(), -J.imag(), J.imag(), J.real();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(R);
    const auto& sv = svd.singularValues();
    out.dimension = n;
    out.max_singular_value = sv.maxCoeff();
    out.min_singular_value = sv.minCoeff();
    out.condition_estimate = out.min_singular_value > 0.0 ? out.max_singular_value / out.min_singular_value
                                                          : std::numeric_limits<double>::infinity();
    return out;
}

std::vector<WindowSpectrum> spectrum_trend(const PeriodicConfiguration& config, const std::vector<int>& windows,
                                           Boundary boundary, const TolerancePolicy& tol) {
    std::vector<WindowSpectrum> out;
    for (int w : windows) out.push_back(nondegeneracy_spectrum(config, w, boundary, tol));
    return out;
}

}  // namespace maxface
