#include "magq/cascade.hpp"

#include "magq/errors.hpp"
#include "magq/tolerances.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace magq {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix number_op(int site, int n) {
    const Matrix sm = embed_lowering(site, n);
    return sm.adjoint() * sm;
}

/// -i (H_eff rho - rho H_eff^dag) + L rho L^dag for one bath branch.
/// `phases[i]` is the propagation phase at qubit i; `v_sign` selects which
/// triangle of the pair coupling is populated.
Matrix one_way_block(int n, double j, const std::vector<double>& phases, int v_sign) {
    const int dim = 1 << n;
    Matrix h_eff = Matrix::Zero(dim, dim);
    Matrix jump = Matrix::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        h_eff += -kI * (j / 2.0) * number_op(i, n);
        jump += std::sqrt(j) * std::exp(-kI * phases[i]) * embed_lowering(i, n);
    }
    for (int i = 0; i < n; ++i) {
        for (int jq = 0; jq < n; ++jq) {
            const bool downstream = v_sign >= 0 ? (i > jq) : (i < jq);
            if (!downstream) continue;
            const Complex phase = std::exp(kI * (phases[i] - phases[jq]));
            h_eff += -kI * j * phase * (embed_lowering(jq, n) * embed_lowering(i, n).adjoint());
        }
    }
    return -kI * (spre(h_eff) - spost(h_eff.adjoint())) + spre(jump) * spost(jump.adjoint());
}

/// Lindblad dissipator D[A] in superoperator form.
Matrix dissipator(const Matrix& a) {
    const Matrix ada = a.adjoint() * a;
    return spre(a) * spost(a.adjoint()) - 0.5 * (spre(ada) + spost(ada));
}

Matrix decoherence_terms(const ChainConfig& cfg) {
    const int dim = 1 << cfg.n_qubits;
    Matrix out = Matrix::Zero(dim * dim, dim * dim);
    for (int i = 0; i < cfg.n_qubits; ++i) {
        if (cfg.t1) out += (1.0 / *cfg.t1) * dissipator(embed_lowering(i, cfg.n_qubits));
        if (cfg.t_phi) out += (1.0 / *cfg.t_phi) * dissipator(number_op(i, cfg.n_qubits));
    }
    return out;
}

Matrix commutator_block(const Matrix& h) { return -kI * (spre(h) - spost(h)); }

}  // namespace

void ChainConfig::validate() const {
    if (n_qubits < 1) throw std::domain_error("ChainConfig: n_qubits must be positive");
    if (j_q < 0.0) throw std::domain_error("ChainConfig: j_q must be non-negative");
    if (omega_rabi < 0.0) throw std::domain_error("ChainConfig: omega_rabi must be non-negative");
    if (static_cast<int>(phases.size()) != n_qubits) {
        throw std::domain_error("ChainConfig: need one phase per qubit");
    }
    if (t1 && *t1 <= 0.0) throw std::domain_error("ChainConfig: t1 must be positive");
    if (t_phi && *t_phi <= 0.0) throw std::domain_error("ChainConfig: t_phi must be positive");
}

Matrix build_drive_hamiltonian(const ChainConfig& cfg) {
    cfg.validate();
    const int dim = 1 << cfg.n_qubits;
    Matrix h = Matrix::Zero(dim, dim);
    for (int i = 0; i < cfg.n_qubits; ++i) {
        const Matrix sm = embed_lowering(i, cfg.n_qubits);
        h += cfg.delta_q * (sm.adjoint() * sm) + cfg.omega_rabi * (sm.adjoint() + sm);
    }
    return h;
}

Matrix build_effective_hamiltonian(const ChainConfig& cfg) {
    cfg.validate();
    const int dim = 1 << cfg.n_qubits;
    Matrix h = Matrix::Zero(dim, dim);
    for (int i = 0; i < cfg.n_qubits; ++i) {
        h += -kI * (cfg.j_q / 2.0) * number_op(i, cfg.n_qubits);
    }
    for (int i = 0; i < cfg.n_qubits; ++i) {
        for (int j = 0; j < i; ++j) {
            const Complex phase = std::exp(kI * (cfg.phases[i] - cfg.phases[j]));
            h += -kI * cfg.j_q * phase *
                 (embed_lowering(j, cfg.n_qubits) * embed_lowering(i, cfg.n_qubits).adjoint());
        }
    }
    return h;
}

Matrix build_collective_jump(const ChainConfig& cfg) {
    cfg.validate();
    const int dim = 1 << cfg.n_qubits;
    Matrix jump = Matrix::Zero(dim, dim);
    for (int i = 0; i < cfg.n_qubits; ++i) {
        jump += std::sqrt(cfg.j_q) * std::exp(-kI * cfg.phases[i]) *
                embed_lowering(i, cfg.n_qubits);
    }
    return jump;
}

LiouvillianOperator assemble_liouvillian(const ChainConfig& cfg) {
    cfg.validate();
    Matrix liou = commutator_block(build_drive_hamiltonian(cfg));
    liou += one_way_block(cfg.n_qubits, cfg.j_q, cfg.phases, +1);
    liou += decoherence_terms(cfg);
    return LiouvillianOperator{cfg.n_qubits, std::move(liou)};
}

LiouvillianOperator build_directional_liouvillian(const ChainConfig& cfg,
                                                  const DirectionalConfig& dir) {
    if (cfg.n_qubits != 2) {
        throw unsupported_configuration("directional coupling is defined for two qubits");
    }
    if (dir.j_r < 0.0 || dir.j_l < 0.0) {
        throw std::domain_error("DirectionalConfig: rates must be non-negative");
    }
    ChainConfig base = cfg;
    base.j_q = 0.0;  // bath handled per branch below
    base.validate();

    Matrix liou = commutator_block(build_drive_hamiltonian(base));
    // Right branch: hop sigma^-_1 sigma^+_2 with e^{i phase_r}.
    liou += one_way_block(2, dir.j_r, {0.0, dir.phase_r}, +1);
    // Left branch: hop sigma^+_1 sigma^-_2 with e^{i phase_l}; the matching
    // jump phase follows from trace preservation.
    liou += one_way_block(2, dir.j_l, {0.0, -dir.phase_l}, -1);
    liou += decoherence_terms(base);
    return LiouvillianOperator{2, std::move(liou)};
}

Matrix coupling_matrix(const ChainConfig& cfg, int v_sign) {
    cfg.validate();
    const int n = cfg.n_qubits;
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = cfg.j_q / 2.0;
        for (int j = 0; j < n; ++j) {
            const bool downstream = v_sign >= 0 ? (i > j) : (i < j);
            if (downstream) {
                m(i, j) = cfg.j_q * std::exp(kI * (cfg.phases[i] - cfg.phases[j]));
            }
        }
    }
    return m;
}

DensityMatrix propagate(const LiouvillianOperator& liou, const DensityMatrix& rho0, double t) {
    if (t < 0.0) throw std::domain_error("propagate: time must be non-negative");
    if (rho0.dim() * rho0.dim() != liou.dim()) {
        throw std::domain_error("propagate: dimension mismatch");
    }
    const Vector v = matrix_exponential(liou.matrix * t) * vectorize(rho0.entries);
    Matrix rho = devectorize(v);
    rho = 0.5 * (rho + rho.adjoint().eval());
    const double drift = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (drift > tol::trace_drift_hard) {
        throw numerical_instability("propagate: trace drifted by " + std::to_string(drift));
    }
    if (drift > tol::trace_drift_soft) {
        rho /= rho.trace().real();
    }
    return DensityMatrix::checked(std::move(rho));
}

DensityMatrix steady_state(const LiouvillianOperator& liou) {
    Eigen::JacobiSVD<Matrix> svd(liou.matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cut = tol::null_space * sv(0);
    int null_dim = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) < cut) ++null_dim;
    }
    if (null_dim != 1) {
        throw degenerate_steady_state("steady_state: null space dimension is " +
                                      std::to_string(null_dim));
    }
    Matrix rho = devectorize(svd.matrixV().col(sv.size() - 1));
    rho = 0.5 * (rho + rho.adjoint().eval());
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-14) {
        throw degenerate_steady_state("steady_state: null vector is traceless");
    }
    rho /= tr;
    const double resid = (liou.matrix * vectorize(rho)).norm();
    if (resid > tol::steady_residual) {
        throw numerical_instability("steady_state: residual " + std::to_string(resid));
    }
    return DensityMatrix::checked(std::move(rho));
}

EffectiveSpectrum effective_spectrum(const ChainConfig& cfg) {
    cfg.validate();
    if (cfg.n_qubits != 2) {
        throw unsupported_configuration("effective_spectrum: defined for two qubits");
    }
    if (cfg.delta_q != 0.0) {
        throw unsupported_configuration("effective_spectrum: requires resonant drive");
    }
    if (cfg.omega_rabi <= 0.0) {
        throw unsupported_configuration("effective_spectrum: requires a nonzero drive");
    }
    const double dphi = cfg.phases[1] - cfg.phases[0];
    const double wrapped = std::remainder(dphi, 2.0 * std::numbers::pi);
    if (std::abs(wrapped) > tol::phase_mod_2pi) {
        throw unsupported_configuration("effective_spectrum: pair phase must be 0 mod 2pi");
    }

    const double r = cfg.j_q / (2.0 * cfg.omega_rabi);
    const Complex nu = std::sqrt(Complex((4.0 - r) * (4.0 + r), 0.0)) / 2.0;
    const double omega = cfg.omega_rabi;

    EffectiveSpectrum out{
        r,
        nu,
        {Complex(0.0, 0.0), Complex(0.0, -cfg.j_q / 2.0),
         (Complex(0.0, -1.5 * r) + nu) * omega, (Complex(0.0, -1.5 * r) - nu) * omega},
        {},
        std::abs(r - 4.0) < tol::phase_mod_2pi,
    };

    // Unnormalized rays in the basis |00>, |01>, |10>, |11>.
    Vector psi0(4), psi1(4);
    psi0 << kI * r, -1.0, 1.0, 0.0;
    psi1 << 1.0, -kI * r, 0.0, -1.0;
    auto psi_pm = [&](double sgn) {
        Vector v(4);
        v << 2.0 + sgn * kI * nu * r - 0.5 * r * r,
            0.5 * kI * r * (r * r - 1.0) + sgn * nu * (r * r + 1.0),
            1.5 * kI * r + sgn * nu, Complex(2.0 + r * r, 0.0);
        return v;
    };
    out.eigenstates[0] = PureState::normalized(psi0);
    out.eigenstates[1] = PureState::normalized(psi1);
    out.eigenstates[2] = PureState::normalized(psi_pm(+1.0));
    out.eigenstates[3] = PureState::normalized(psi_pm(-1.0));

    // Cross-check against a dense eigensolve of H_Q + H_eff.
    const Matrix h = build_drive_hamiltonian(cfg) + build_effective_hamiltonian(cfg);
    Eigen::ComplexEigenSolver<Matrix> es(h);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    for (const Complex& w : out.eigenvalues) {
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < 4; ++i) best = std::min(best, std::abs(w - es.eigenvalues()(i)));
        if (best > tol::spectrum_match * scale) {
            throw numerical_instability("effective_spectrum: closed form deviates from numeric "
                                        "eigenvalue by " + std::to_string(best));
        }
    }
    return out;
}

PureState bell_psi_minus() {
    Vector v = Vector::Zero(4);
    v(2) = 1.0;   // |10>
    v(1) = -1.0;  // |01>
    return PureState::normalized(std::move(v));
}

PureState steady_state_ket(double zeta) {
    if (zeta < 0.0) throw std::domain_error("steady_state_ket: zeta must be non-negative");
    Vector v = Vector::Zero(4);
    v(0) = kI * zeta;
    v(2) = 1.0 / std::numbers::sqrt2;
    v(1) = -1.0 / std::numbers::sqrt2;
    return PureState::normalized(std::move(v));
}

}  // namespace magq
