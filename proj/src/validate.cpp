#include "magq/validate.hpp"

#include "magq/cascade.hpp"
#include "magq/magnonics.hpp"
#include "magq/protocol.hpp"
#include "magq/tolerances.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace magq {

namespace {

class Suite {
  public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::string& what) {
        ++result_.checks;
        if (!ok) {
            ++result_.failures;
            result_.messages.push_back(what);
        }
    }

    SuiteResult take() { return std::move(result_); }

  private:
    SuiteResult result_;
};

Matrix random_matrix(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
    }
    return m;
}

DensityMatrix random_density(std::mt19937& rng, int dim) {
    Matrix g = random_matrix(rng, dim);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::checked(0.5 * (rho + rho.adjoint().eval()));
}

ChainConfig random_chain(std::mt19937& rng, bool with_decoherence) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ChainConfig cfg;
    cfg.n_qubits = 1 + static_cast<int>(u(rng) * 2.999);
    cfg.delta_q = 2.0 * u(rng) - 1.0;
    cfg.omega_rabi = 3.0 * u(rng);
    cfg.j_q = 0.2 + 2.0 * u(rng);
    cfg.phases.assign(cfg.n_qubits, 0.0);
    for (int i = 1; i < cfg.n_qubits; ++i) {
        cfg.phases[i] = cfg.phases[i - 1] + 2.0 * std::numbers::pi * u(rng);
    }
    if (with_decoherence && u(rng) < 0.5) cfg.t1 = 20.0 + 200.0 * u(rng);
    if (with_decoherence && u(rng) < 0.5) cfg.t_phi = 20.0 + 200.0 * u(rng);
    return cfg;
}

SuiteResult quantum_core_suite(std::mt19937& rng) {
    Suite s("quantum_core");
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    // expm(-iHt) is unitary for Hermitian H.
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + trial;
        Matrix h = random_matrix(rng, n);
        h = (h + h.adjoint().eval()) / 2.0;
        const double t = 0.3 + 1.4 * std::abs(u(rng));
        const Matrix uop = matrix_exponential(Complex(0.0, -1.0) * h * t);
        const double dev = (uop.adjoint() * uop - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
        s.check(dev < 1e-10, "expm(-iHt) unitarity deviation " + std::to_string(dev));
    }

    // kron associativity, exact for integer entries.
    {
        std::uniform_int_distribution<int> d(-3, 3);
        Matrix a(2, 2), b(2, 2), c(2, 2);
        for (int k = 0; k < 4; ++k) {
            a(k / 2, k % 2) = d(rng);
            b(k / 2, k % 2) = d(rng);
            c(k / 2, k % 2) = d(rng);
        }
        const Matrix left = kron(kron(a, b), c);
        const Matrix right = kron(a, kron(b, c));
        s.check(left == right, "kron associativity is not exact");
    }

    // fidelity is invariant under a global phase of the pure state.
    {
        const DensityMatrix rho = random_density(rng, 4);
        Vector v(4);
        for (int i = 0; i < 4; ++i) v(i) = Complex(u(rng), u(rng));
        const PureState psi = PureState::normalized(v);
        const PureState psi_rot =
            PureState{std::exp(Complex(0.0, 0.7)) * psi.amplitudes};
        s.check(fidelity_pure(rho, psi) == fidelity_pure(rho, psi_rot),
                "fidelity is not phase invariant");
    }

    // devectorize . vectorize is the identity, bit-exact.
    {
        const Matrix m = random_matrix(rng, 5);
        s.check(devectorize(vectorize(m)) == m, "vec round trip is not bit-exact");
    }
    return s.take();
}

SuiteResult cascade_suite(std::mt19937& rng) {
    Suite s("cascade_dynamics");

    // Trace preservation: vec(I)^dag L = 0.
    for (int trial = 0; trial < 20; ++trial) {
        const ChainConfig cfg = random_chain(rng, true);
        const LiouvillianOperator liou = assemble_liouvillian(cfg);
        const int dim = 1 << cfg.n_qubits;
        const Vector tr_row = liou.matrix.adjoint() * vectorize(Matrix::Identity(dim, dim));
        s.check(tr_row.cwiseAbs().maxCoeff() < tol::trace_preserve,
                "Liouvillian does not preserve the trace");
    }

    // Positivity along the evolution.
    for (int trial = 0; trial < 10; ++trial) {
        const ChainConfig cfg = random_chain(rng, true);
        const LiouvillianOperator liou = assemble_liouvillian(cfg);
        const DensityMatrix rho0 = random_density(rng, 1 << cfg.n_qubits);
        for (double t : {0.5, 10.0, 1000.0}) {
            const DensityMatrix rho = propagate(liou, rho0, t);
            Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries, Eigen::EigenvaluesOnly);
            s.check(es.eigenvalues().minCoeff() >= -1e-8,
                    "propagated state has eigenvalue " +
                        std::to_string(es.eigenvalues().minCoeff()));
        }
    }

    // Unidirectionality: undriven |01> never excites qubit 1.
    {
        ChainConfig cfg;
        cfg.omega_rabi = 0.0;
        cfg.j_q = 1.0;
        const LiouvillianOperator liou = assemble_liouvillian(cfg);
        Matrix rho01 = Matrix::Zero(4, 4);
        rho01(1, 1) = 1.0;
        const Matrix n1 = embed_lowering(0, 2).adjoint() * embed_lowering(0, 2);
        for (double t : {0.1, 1.0, 5.0, 20.0}) {
            const DensityMatrix rho = propagate(liou, DensityMatrix{rho01}, t);
            const double pop = (n1 * rho.entries).trace().real();
            s.check(std::abs(pop) < 1e-12, "upstream qubit acquired population");
        }
    }

    // Dark state: steady state matches the closed form at zero pair phase.
    {
        std::uniform_real_distribution<double> u(0.05, 2.0);
        for (int trial = 0; trial < 8; ++trial) {
            const double zeta = u(rng);
            ChainConfig cfg;
            cfg.omega_rabi = 1.0;
            cfg.j_q = 2.0 * std::numbers::sqrt2 * zeta;
            cfg.phases = {0.0, trial % 2 ? 2.0 * std::numbers::pi : 0.0};
            const DensityMatrix rho = steady_state(assemble_liouvillian(cfg));
            const double f = fidelity_pure(rho, steady_state_ket(zeta));
            s.check(f >= 1.0 - 1e-8, "steady state deviates from the dark state");
        }
    }

    // Two-branch generator reduces to the one-way one when j_l = 0.
    {
        ChainConfig cfg;
        cfg.omega_rabi = 1.3;
        cfg.j_q = 1.0;
        cfg.phases = {0.0, 0.4};
        const LiouvillianOperator uni = assemble_liouvillian(cfg);
        const LiouvillianOperator di =
            build_directional_liouvillian(cfg, DirectionalConfig{1.0, 0.0, 0.4, 0.0});
        const double diff = (uni.matrix - di.matrix).cwiseAbs().maxCoeff();
        s.check(diff < 1e-14, "directional(j_l = 0) deviates by " + std::to_string(diff));
    }

    // Closed-form spectrum against the dense eigensolve.
    for (double r : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        ChainConfig cfg;
        cfg.omega_rabi = 1.0;
        cfg.j_q = 2.0 * r;
        bool ok = true;
        try {
            effective_spectrum(cfg);  // cross-validates internally at 1e-9
        } catch (const std::exception&) {
            ok = false;
        }
        s.check(ok, "closed-form spectrum failed at R = " + std::to_string(r));
    }
    return s.take();
}

SuiteResult protocol_suite(std::mt19937&) {
    Suite s("entangle_protocol");
    const double f_t = 0.95;
    const double z_t = zeta_threshold(f_t);

    // Convergence iff zeta < zeta_T, away from the boundary.
    for (int i = 0; i < 12; ++i) {
        const double zeta = 0.01 * std::pow(100.0, i / 11.0);  // log grid in [0.01, 1]
        if (std::abs(zeta - z_t) < 0.02 * z_t) continue;
        const ProtocolOutcome res = protocol_time(zeta, f_t);
        s.check(res.converged == (zeta < z_t),
                "convergence mismatch at zeta = " + std::to_string(zeta));
    }

    // Long-time fidelity approaches the steady overlap.
    for (double zeta : {0.27, 0.6}) {
        ProtocolOptions opt;
        ChainConfig cfg;
        cfg.omega_rabi = 1.0 / (2.0 * std::numbers::sqrt2 * zeta);
        cfg.j_q = 1.0;
        const LiouvillianOperator liou = assemble_liouvillian(cfg);
        Matrix rho00 = Matrix::Zero(4, 4);
        rho00(0, 0) = 1.0;
        const DensityMatrix rho = propagate(liou, DensityMatrix{rho00}, 5000.0);
        const double f = fidelity_pure(rho, bell_psi_minus());
        s.check(std::abs(f - steady_overlap(zeta)) < 1e-6,
                "long-time fidelity misses the steady overlap at zeta = " + std::to_string(zeta));
    }

    // The protocol-time curve is non-monotonic in zeta.
    {
        const ZetaOptimum opt = optimize_zeta(f_t);
        bool left_higher = false;
        bool right_higher = false;
        for (const auto& [z, t] : opt.samples) {
            if (z < opt.zeta_min && t > opt.t_p_min) left_higher = true;
            if (z > opt.zeta_min && t > opt.t_p_min) right_higher = true;
        }
        s.check(left_higher && right_higher, "t_p(zeta) looks monotonic");
    }

    // Decoherence never speeds the protocol up.
    for (double zeta : {0.2, 0.27}) {
        const double base = protocol_time(zeta, f_t).t_protocol;
        ProtocolOptions with_t1;
        with_t1.t1 = 300.0;
        ProtocolOptions with_tphi;
        with_tphi.t_phi = 300.0;
        const ProtocolOutcome r1 = protocol_time(zeta, f_t, with_t1);
        const ProtocolOutcome r2 = protocol_time(zeta, f_t, with_tphi);
        s.check(!r1.converged || r1.t_protocol >= base * (1.0 - 1e-9),
                "qubit decay shortened the protocol");
        s.check(!r2.converged || r2.t_protocol >= base * (1.0 - 1e-9),
                "dephasing shortened the protocol");
    }

    // Directional map with j_l = 0 reproduces the one-way protocol time.
    {
        const double jl[] = {0.0};
        const double ph[] = {0.0};
        const DirectionalMap map = directional_map(f_t, jl, ph);
        s.check(map.cells.size() == 1 && map.cells[0].converged &&
                    std::abs(map.cells[0].t_ratio - 1.0) < 1e-6,
                "zero left branch does not reproduce the reference time");
    }
    return s.take();
}

SuiteResult magnonics_suite(std::mt19937& rng) {
    Suite s("magnonics_de");
    const MaterialFilm film = MaterialFilm::nv_yig_defaults();

    // Dispersion strictly increasing on k > 0.
    {
        bool monotone = true;
        double prev = dispersion_omega(film, 1.0);
        for (int i = 1; i <= 1000; ++i) {
            const double k = std::pow(10.0, 2.0 + 6.0 * i / 1000.0);  // up to 1e8
            const double w = dispersion_omega(film, k);
            if (w <= prev) monotone = false;
            prev = w;
        }
        s.check(monotone, "dispersion is not strictly increasing");
    }

    // Exact symmetry of omega and antisymmetry of the group velocity.
    {
        bool sym = true;
        bool anti = true;
        for (double k : {3e5, 4.8e6, 3e7}) {
            if (dispersion_omega(film, k) != dispersion_omega(film, -k)) sym = false;
            if (group_velocity(film, k) != -group_velocity(film, -k)) anti = false;
        }
        s.check(sym, "omega(k) != omega(-k)");
        s.check(anti, "v(k) != -v(-k)");
    }

    // Boundary-condition residuals over random k, both signs.
    {
        std::uniform_real_distribution<double> u(0.05 / film.d, 20.0 / film.d);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double k = (i % 2 ? -1.0 : 1.0) * u(rng);
            worst = std::max(worst, boundary_residual(film, k));
        }
        s.check(worst < 1e-9, "boundary residual " + std::to_string(worst));
    }

    // Exact chirality zero on the co-polarized branch.
    {
        bool exact = true;
        for (double k : {1e5, 4.8e6, 5e7}) {
            if (coupling_constant(film, k, Polarization::minus) != 0.0) exact = false;
            if (coupling_constant(film, -k, Polarization::plus) != 0.0) exact = false;
        }
        s.check(exact, "chirality zero is not exact");
    }

    // J_q does not depend on l_y and scales as 1/l_z.
    {
        const CouplingSummary base = dissipative_rate(film);
        MaterialFilm wide = film;
        wide.l_y *= 2.0;
        const CouplingSummary doubled = dissipative_rate(wide);
        s.check(std::abs(doubled.j_q - base.j_q) <= 1e-10 * base.j_q,
                "J_q depends on the film length");
        MaterialFilm thick = film;
        thick.l_z *= 2.0;
        const CouplingSummary halved = dissipative_rate(thick);
        s.check(std::abs(halved.j_q - base.j_q / 2.0) <= 1e-10 * base.j_q,
                "J_q does not scale as 1/l_z");
    }

    // Analytic group velocity against central differences.
    {
        double worst = 0.0;
        for (double k : {-2e7, -4.8e6, -3e5, 3e5, 4.8e6, 2e7}) {
            const double h = 1e-6 * std::abs(k);
            const double fd =
                (dispersion_omega(film, k + h) - dispersion_omega(film, k - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - group_velocity(film, k)) /
                                        std::abs(group_velocity(film, k)));
        }
        s.check(worst < 1e-6, "group velocity deviates from finite differences");
    }
    return s.take();
}

}  // namespace

std::vector<SuiteResult> run_validation_suites(unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<SuiteResult> out;
    out.push_back(quantum_core_suite(rng));
    out.push_back(cascade_suite(rng));
    out.push_back(protocol_suite(rng));
    out.push_back(magnonics_suite(rng));
    return out;
}

}  // namespace magq
