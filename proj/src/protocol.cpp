#include "magq/protocol.hpp"

#include "magq/errors.hpp"
#include "magq/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace magq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGridFactor = 1.2;
constexpr double kGridStart = 0.01;

double omega_for_zeta(double zeta) { return 1.0 / (2.0 * std::numbers::sqrt2 * zeta); }

ChainConfig base_config(double zeta, const ProtocolOptions& opt) {
    ChainConfig cfg;
    cfg.n_qubits = 2;
    cfg.delta_q = 0.0;
    cfg.j_q = 1.0;
    cfg.omega_rabi = omega_for_zeta(zeta);
    cfg.phases = {0.0, opt.pair_phase};
    cfg.t1 = opt.t1;
    cfg.t_phi = opt.t_phi;
    return cfg;
}

DensityMatrix ground_pair() {
    Matrix rho = Matrix::Zero(4, 4);
    rho(0, 0) = 1.0;
    return DensityMatrix{std::move(rho)};
}

double fidelity_at(const LiouvillianOperator& liou, const DensityMatrix& rho0,
                   const PureState& target, double t) {
    return fidelity_pure(propagate(liou, rho0, t), target);
}

/// Bracket the first coarse-grid crossing of F(t) >= f_t, then bisect.
ProtocolOutcome search_crossing(const LiouvillianOperator& liou, double zeta, double f_t,
                                double t_max, bool collect_samples) {
    const DensityMatrix rho0 = ground_pair();
    const PureState target = bell_psi_minus();

    ProtocolOutcome out;
    out.zeta = zeta;
    out.f_threshold = f_t;
    out.t_protocol = kInf;
    out.converged = false;

    double t_prev = 0.0;
    for (double t = kGridStart; t <= t_max; t *= kGridFactor) {
        const double f = fidelity_at(liou, rho0, target, t);
        if (collect_samples) out.samples.emplace_back(t, f);
        if (f >= f_t) {
            double lo = t_prev;
            double hi = t;
            while ((hi - lo) > tol::protocol_time_rel * hi) {
                const double mid = 0.5 * (lo + hi);
                if (fidelity_at(liou, rho0, target, mid) >= f_t) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            out.t_protocol = hi;
            out.converged = true;
            return out;
        }
        t_prev = t;
    }
    return out;
}

/// Convergence test used by the coherence benchmark: does any zeta on the
/// log grid (with a local refinement pass around the best candidate) still
/// reach the threshold?
bool any_zeta_converges(double f_t, CoherenceKind kind, double coherence_time,
                        double* zeta_found) {
    const double z_t = zeta_threshold(f_t);
    constexpr int kCoarse = 40;
    std::vector<double> grid(kCoarse);
    const double lo = 0.02;
    const double hi = z_t * (1.0 - 1e-6);
    for (int i = 0; i < kCoarse; ++i) {
        grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (kCoarse - 1));
    }
    // Large zeta converges fastest; scanning from that side exits early.
    std::reverse(grid.begin(), grid.end());
    for (double z : grid) {
        ProtocolOptions opt;
        if (kind == CoherenceKind::lifetime_t1) {
            opt.t1 = coherence_time;
        } else {
            opt.t_phi = coherence_time;
        }
        if (protocol_time(z, f_t, opt).converged) {
            if (zeta_found) *zeta_found = z;
            return true;
        }
    }
    return false;
}

void run_partitioned(int n_cells, int threads, const std::function<void(int)>& work) {
    threads = std::max(1, threads);
    if (threads == 1) {
        for (int i = 0; i < n_cells; ++i) work(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < n_cells; i += threads) work(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

double steady_overlap(double zeta) {
    if (zeta < 0.0) throw std::domain_error("steady_overlap: zeta must be non-negative");
    return 1.0 / std::sqrt(zeta * zeta + 1.0);
}

double zeta_threshold(double f_t) {
    if (!(f_t > 0.0 && f_t < 1.0)) {
        throw std::domain_error("zeta_threshold: threshold must be in (0, 1)");
    }
    return std::sqrt(1.0 / (f_t * f_t) - 1.0);
}

ProtocolOutcome protocol_time(double zeta, double f_t, const ProtocolOptions& opt) {
    if (!(zeta > 0.0)) throw std::domain_error("protocol_time: zeta must be positive");
    if (!(f_t > 0.0 && f_t < 1.0)) {
        throw std::domain_error("protocol_time: threshold must be in (0, 1)");
    }
    if (zeta >= zeta_threshold(f_t)) {
        // Steady-state overlap can never clear the threshold.
        ProtocolOutcome out;
        out.zeta = zeta;
        out.f_threshold = f_t;
        out.t_protocol = kInf;
        out.converged = false;
        return out;
    }
    const LiouvillianOperator liou = assemble_liouvillian(base_config(zeta, opt));
    return search_crossing(liou, zeta, f_t, opt.t_max, opt.collect_samples);
}

ProtocolOutcome protocol_time(const LiouvillianOperator& liou, double zeta, double f_t,
                              double t_max, bool collect_samples) {
    return search_crossing(liou, zeta, f_t, t_max, collect_samples);
}

ZetaOptimum optimize_zeta(double f_t) {
    const double z_t = zeta_threshold(f_t);
    constexpr int kCoarse = 40;
    ZetaOptimum out{0.0, kInf, {}};

    const double lo = 0.02;
    const double hi = z_t * (1.0 - 1e-6);
    std::vector<double> grid(kCoarse);
    for (int i = 0; i < kCoarse; ++i) {
        grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (kCoarse - 1));
    }

    auto tp = [&](double z) { return protocol_time(z, f_t).t_protocol; };

    int best = -1;
    for (int i = 0; i < kCoarse; ++i) {
        const double t = tp(grid[i]);
        out.samples.emplace_back(grid[i], t);
        if (t < out.t_p_min) {
            out.t_p_min = t;
            out.zeta_min = grid[i];
            best = i;
        }
    }
    if (best < 0) return out;  // nothing converged; empty optimum

    // Golden-section refinement between the coarse neighbors.
    double a = grid[std::max(best - 1, 0)];
    double b = grid[std::min(best + 1, kCoarse - 1)];
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = tp(c);
    double fd = tp(d);
    while ((b - a) > 1e-3 * a) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = tp(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = tp(d);
        }
    }
    const double z_best = 0.5 * (a + b);
    const double t_best = tp(z_best);
    if (t_best < out.t_p_min) {
        out.zeta_min = z_best;
        out.t_p_min = t_best;
    }
    return out;
}

BenchmarkResult benchmark_coherence(CoherenceKind kind, double f_t) {
    if (!(f_t > 0.0 && f_t < 1.0)) {
        throw std::domain_error("benchmark_coherence: threshold must be in (0, 1)");
    }
    double t_lo = 1.0;
    double t_hi = 1.0;
    double zeta_found = 0.0;
    while (!any_zeta_converges(f_t, kind, t_hi, &zeta_found)) {
        t_lo = t_hi;
        t_hi *= 2.0;
        if (t_hi > 1e8) {
            throw numerical_instability("benchmark_coherence: no convergence below T = 1e8");
        }
    }
    while ((t_hi - t_lo) > tol::benchmark_rel * t_hi) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (any_zeta_converges(f_t, kind, mid, &zeta_found)) {
            t_hi = mid;
        } else {
            t_lo = mid;
        }
    }
    any_zeta_converges(f_t, kind, t_hi, &zeta_found);
    return BenchmarkResult{kind, f_t, t_hi, zeta_found};
}

DirectionalMap directional_map(double f_t, std::span<const double> jl_grid,
                               std::span<const double> phase_grid, int threads) {
    const ZetaOptimum ref = optimize_zeta(f_t);
    if (!std::isfinite(ref.t_p_min)) {
        throw numerical_instability("directional_map: unidirectional reference did not converge");
    }

    DirectionalMap map;
    map.f_threshold = f_t;
    map.zeta_ref = ref.zeta_min;
    map.t_p_ref = ref.t_p_min;
    map.cells.resize(jl_grid.size() * phase_grid.size());

    ChainConfig cfg;
    cfg.n_qubits = 2;
    cfg.omega_rabi = omega_for_zeta(ref.zeta_min);
    cfg.j_q = 1.0;
    cfg.phases = {0.0, 0.0};

    const double cap = 1000.0 * ref.t_p_min;
    const int n_phase = static_cast<int>(phase_grid.size());
    run_partitioned(static_cast<int>(map.cells.size()), threads, [&](int idx) {
        const double jl = jl_grid[idx / n_phase];
        const double ph = phase_grid[idx % n_phase];
        const LiouvillianOperator liou =
            build_directional_liouvillian(cfg, DirectionalConfig{1.0, jl, 0.0, ph});
        const ProtocolOutcome res = protocol_time(liou, ref.zeta_min, f_t, cap);
        map.cells[idx] = DirectionalCell{jl, ph, res.t_protocol / ref.t_p_min, res.converged};
    });
    return map;
}

std::vector<std::pair<double, double>> transient_overlap(double zeta,
                                                         std::span<const double> t_grid) {
    if (!(zeta > 0.0)) throw std::domain_error("transient_overlap: zeta must be positive");
    const LiouvillianOperator liou = assemble_liouvillian(base_config(zeta, {}));
    const DensityMatrix rho0 = ground_pair();
    const PureState target = steady_state_ket(zeta);
    std::vector<std::pair<double, double>> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        out.emplace_back(t, fidelity_at(liou, rho0, target, t));
    }
    return out;
}

ZetaSensitivity zeta_sensitivity(double f_t, std::span<const double> err_grid) {
    const ZetaOptimum ref = optimize_zeta(f_t);
    if (!std::isfinite(ref.t_p_min)) {
        throw numerical_instability("zeta_sensitivity: reference did not converge");
    }
    ZetaSensitivity out;
    out.zeta_min = ref.zeta_min;
    out.t_p_min = ref.t_p_min;
    out.margin = (zeta_threshold(f_t) - ref.zeta_min) / ref.zeta_min;
    out.curve.reserve(err_grid.size());
    for (double err : err_grid) {
        const double z = ref.zeta_min * (1.0 + err);
        double ratio = kInf;
        if (z > 0.0) {
            const ProtocolOutcome res = protocol_time(z, f_t);
            if (res.converged) ratio = res.t_protocol / ref.t_p_min;
        }
        out.curve.emplace_back(err, ratio);
    }
    return out;
}

PhaseSensitivity phase_sensitivity(double zeta, double f_t,
                                   std::span<const double> phase_grid) {
    const ProtocolOutcome ref = protocol_time(zeta, f_t);
    if (!ref.converged) {
        throw numerical_instability("phase_sensitivity: reference did not converge");
    }
    PhaseSensitivity out;
    out.zeta = zeta;
    out.t_p_ref = ref.t_protocol;
    out.rows.reserve(phase_grid.size());

    const DensityMatrix rho0 = ground_pair();
    const PureState target = bell_psi_minus();
    for (double ph : phase_grid) {
        ProtocolOptions opt;
        opt.pair_phase = ph;
        const LiouvillianOperator liou = assemble_liouvillian(base_config(zeta, opt));
        const double f_tp = fidelity_at(liou, rho0, target, ref.t_protocol);
        const ProtocolOutcome res = protocol_time(liou, zeta, f_t, opt.t_max);
        out.rows.push_back(
            PhaseSensitivityRow{ph, f_tp, res.t_protocol / ref.t_protocol, res.converged});
    }
    return out;
}

}  // namespace magq
