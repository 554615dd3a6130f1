#ifndef MAGQ_PROTOCOL_HPP
#define MAGQ_PROTOCOL_HPP

#include "magq/cascade.hpp"

#include <span>
#include <utility>
#include <vector>

namespace magq {

/// Result of a protocol-time search. Times are in units of 1/J_q; a
/// non-converged search carries t_protocol = +infinity.
struct ProtocolOutcome {
    double zeta = 0.0;
    double f_threshold = 0.0;
    double t_protocol = 0.0;
    bool converged = false;
    std::vector<std::pair<double, double>> samples;  // (J_q t, F(t)) on the coarse grid
};

struct ProtocolOptions {
    std::optional<double> t1;     // units of 1/J_q
    std::optional<double> t_phi;  // units of 1/J_q
    double pair_phase = 0.0;      // k_q r_21
    double t_max = 1e5;           // units of 1/J_q
    bool collect_samples = false;
};

enum class CoherenceKind { lifetime_t1, dephasing_tphi };

struct BenchmarkResult {
    CoherenceKind kind;
    double f_threshold;
    double min_time;     // minimal coherence time, units of 1/J_q
    double zeta_at_min;  // a zeta that converges at min_time
};

struct ZetaOptimum {
    double zeta_min;
    double t_p_min;
    std::vector<std::pair<double, double>> samples;  // coarse (zeta, t_p) curve
};

struct DirectionalCell {
    double jl_over_jr;
    double phase_l;
    double t_ratio;  // t_p,di / t_p ; +infinity when not converged
    bool converged;
};

struct DirectionalMap {
    double f_threshold;
    double zeta_ref;
    double t_p_ref;
    std::vector<DirectionalCell> cells;  // ordered jl-major, then phase
};

struct ZetaSensitivity {
    double zeta_min;
    double t_p_min;
    double margin;  // (zeta_T - zeta_min) / zeta_min
    std::vector<std::pair<double, double>> curve;  // (relative error, t_p/t_p_min)
};

struct PhaseSensitivityRow {
    double phase;     // k_q r_21
    double f_at_tp;   // F(t_p) at the reference protocol time
    double t_ratio;   // t_p,phi / t_p ; +infinity when not converged
    bool converged;
};

struct PhaseSensitivity {
    double zeta;
    double t_p_ref;
    std::vector<PhaseSensitivityRow> rows;
};

/// |<psi_-|psi_s>| = 1/sqrt(zeta^2 + 1).
double steady_overlap(double zeta);

/// Largest zeta whose steady state still clears the threshold:
/// zeta_T = sqrt(1/F_T^2 - 1).
double zeta_threshold(double f_t);

/// Minimal time for F(t) = sqrt(<psi_-| rho(t) |psi_->) >= F_T starting
/// from |00><00| with J_q = 1 and Omega = 1/(2 sqrt(2) zeta). The crossing
/// is bracketed on a geometric grid (factor 1.2) and bisected to relative
/// resolution 1e-4. Non-convergence (t_max reached, or zeta >= zeta_T) is a
/// value, not an error.
ProtocolOutcome protocol_time(double zeta, double f_t, const ProtocolOptions& opt = {});

/// Same search on a caller-supplied generator (J_q = 1 time units).
ProtocolOutcome protocol_time(const LiouvillianOperator& liou, double zeta, double f_t,
                              double t_max, bool collect_samples = false);

/// Minimize protocol_time over zeta in (0, zeta_T): coarse log grid, then
/// golden-section refinement around the grid minimum.
ZetaOptimum optimize_zeta(double f_t);

/// Minimal coherence time (T1 or Tphi) such that some zeta on the search
/// grid still converges; bisection to relative resolution 1e-2.
BenchmarkResult benchmark_coherence(CoherenceKind kind, double f_t);

/// Protocol-time map over (j_l/j_r, phase_l) relative to the unidirectional
/// reference from optimize_zeta(f_t). Cells are capped at t = 1000 t_p.
DirectionalMap directional_map(double f_t, std::span<const double> jl_grid,
                               std::span<const double> phase_grid, int threads = 1);

/// Overlap sqrt(<psi_s| rho(t) |psi_s>) from |00><00| on the given grid.
std::vector<std::pair<double, double>> transient_overlap(double zeta,
                                                         std::span<const double> t_grid);

/// t_p(zeta_min (1 + err)) / t_p_min over the error grid, plus the relative
/// headroom (zeta_T - zeta_min)/zeta_min.
ZetaSensitivity zeta_sensitivity(double f_t, std::span<const double> err_grid);

/// F(t_p) and re-converged protocol time as the pair phase k_q r_21 moves
/// away from zero, at fixed zeta.
PhaseSensitivity phase_sensitivity(double zeta, double f_t, std::span<const double> phase_grid);

}  // namespace magq

#endif
