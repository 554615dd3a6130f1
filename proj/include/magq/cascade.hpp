#ifndef MAGQ_CASCADE_HPP
#define MAGQ_CASCADE_HPP

#include "magq/dense.hpp"

#include <array>
#include <optional>
#include <vector>

namespace magq {

/// Driven qubit chain coupled through a one-way bath. All rates (delta_q,
/// omega_rabi, j_q, 1/t1, 1/t_phi) share one inverse-time unit; hbar never
/// appears. phases[i] stores k_q * r_i with positions r_i non-decreasing
/// along the propagation axis.
struct ChainConfig {
    int n_qubits = 2;
    double delta_q = 0.0;
    double omega_rabi = 0.0;
    double j_q = 1.0;
    std::vector<double> phases = {0.0, 0.0};
    std::optional<double> t1;
    std::optional<double> t_phi;

    void validate() const;
};

/// Two counter-propagating bath branches for a pair of qubits. phase_r is
/// the pair phase of the right-moving branch (k_R * r_21); phase_l enters
/// the left-moving hop term exp(i*phase_l) directly.
struct DirectionalConfig {
    double j_r = 1.0;
    double j_l = 0.0;
    double phase_r = 0.0;
    double phase_l = 0.0;
};

struct LiouvillianOperator {
    int n_qubits;
    Matrix matrix;  // D^2 x D^2, D = 2^n_qubits

    int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Closed-form eigensystem of the non-Hermitian generator H_Q + H_eff for a
/// resonantly driven pair at zero pair phase. r_param = J_q / (2 Omega).
struct EffectiveSpectrum {
    double r_param;
    Complex nu;                             // sqrt((4 - R)(4 + R)) / 2
    std::array<Complex, 4> eigenvalues;     // omega_0, omega_1, omega_+, omega_-
    std::array<PureState, 4> eigenstates;
    bool at_exceptional_point;
};

/// Drive term: sum_i delta_q n_i + Omega (sigma^+_i + sigma^-_i). Hermitian.
Matrix build_drive_hamiltonian(const ChainConfig& cfg);

/// Non-Hermitian bath-induced term: local damping -i J_q/2 n_i plus one-way
/// hopping -i J_q e^{i (phases[i]-phases[j])} sigma^-_j sigma^+_i for i > j.
Matrix build_effective_hamiltonian(const ChainConfig& cfg);

/// Collective jump operator sum_i sqrt(J_q) e^{-i phases[i]} sigma^-_i.
Matrix build_collective_jump(const ChainConfig& cfg);

/// Full generator in column-stacked superoperator form, including optional
/// per-qubit decay (1/T1) D[sigma^-] and pure dephasing (1/Tphi) D[n].
LiouvillianOperator assemble_liouvillian(const ChainConfig& cfg);

/// Two-branch generator: a right-moving one-way block (j_r) plus a
/// left-moving one (j_l), each with its own damping and collective jump.
/// cfg supplies n_qubits (= 2), drive and decoherence; cfg.j_q and
/// cfg.phases are ignored.
LiouvillianOperator build_directional_liouvillian(const ChainConfig& cfg,
                                                  const DirectionalConfig& dir);

/// Born-Markov coupling matrix J_{i,j}: diagonal J_q/2, and J_q e^{i dphi}
/// strictly below (v_sign = +1, propagation to the right) or above
/// (v_sign = -1) the diagonal.
Matrix coupling_matrix(const ChainConfig& cfg, int v_sign);

/// devectorize(expm(L t) vec(rho0)), re-Hermitized; trace drift in
/// (1e-12, 1e-8] is renormalized away, larger drift throws.
DensityMatrix propagate(const LiouvillianOperator& liou, const DensityMatrix& rho0, double t);

/// Unique null vector of L, normalized to unit trace.
DensityMatrix steady_state(const LiouvillianOperator& liou);

/// Closed-form spectrum, cross-validated against a dense eigensolve.
/// Requires n_qubits = 2, delta_q = 0 and pair phase = 0 mod 2pi.
EffectiveSpectrum effective_spectrum(const ChainConfig& cfg);

/// (|10> - |01>)/sqrt(2) on two qubits.
PureState bell_psi_minus();

/// (i zeta |00> + (|10> - |01>)/sqrt(2)) / sqrt(zeta^2 + 1); the dark state
/// of the one-way generator at zeta = J_q / (2 sqrt(2) Omega).
PureState steady_state_ket(double zeta);

}  // namespace magq

#endif
