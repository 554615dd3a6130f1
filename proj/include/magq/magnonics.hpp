#ifndef MAGQ_MAGNONICS_HPP
#define MAGQ_MAGNONICS_HPP

#include <complex>
#include <string>
#include <utility>

namespace magq {

/// In-plane-magnetized ferromagnetic film with a spin sitting d_nv above the
/// top surface. All SI: lengths in m, fields in T, rates in rad/s.
struct MaterialFilm {
    double d0;       // spin zero-field splitting, rad/s
    double gamma_s;  // gyromagnetic ratio, 1/(T s)
    double d;        // film thickness, m
    double l_y;      // film length along the propagation axis, m
    double l_z;      // film width, m
    double d_ex;     // exchange stiffness, m^2
    double m_s;      // saturation magnetization, A/m
    double d_nv;     // spin height above the top surface, m
    double mu0_h0;   // external field mu0 H0, T
    double tau_m;    // magnon lifetime, s

    /// NV/YIG reference parameter set.
    static MaterialFilm nv_yig_defaults();

    void validate() const;
    double omega_h() const;  // gamma_s mu0 H0
    double omega_m() const;  // gamma_s mu0 M_s
};

struct SusceptibilityPair {
    double chi_d;
    double chi_a;
};

enum class Polarization { plus, minus };

/// Surface-mode data at one signed wave number. Mode coefficients follow
/// the scalar-potential ansatz inside (A, B) and above (C) the film; the
/// field above the top surface is right/left circular for k >< 0.
struct SurfaceMode {
    double k;        // 1/m, signed
    double omega;    // rad/s
    double v_group;  // m/s
    std::complex<double> coeff_a;
    std::complex<double> coeff_b;
    std::complex<double> coeff_c;
    Polarization polarization;  // e_- for k > 0, e_+ for k < 0 (top surface)
};

struct FieldFluctuation {
    std::complex<double> amplitude;
    Polarization polarization;
};

/// Headline numbers of the spin/film coupling pipeline.
struct CouplingSummary {
    double omega_minus, omega_plus;  // spin transition frequencies, rad/s
    double k_minus, k_plus;          // resonant wave numbers, 1/m
    double g_minus_branch;           // |g_{k_-,+}|, rad/s
    double g_plus_branch;            // |g_{-k_+,-}|, rad/s
    double suppression_ratio;        // g_plus_branch / g_minus_branch
    double j_q;                      // dissipative rate L_y |g|^2 / |v|, 1/s
    double v_group_kq;               // group velocity at k_-, m/s
    double l_m;                      // coherence length, m (see dissipative_rate)
    double markov_ratio;             // j_q / (v_group / l_m)
    double drive_ratio;              // tau_m / tau_{delta,Omega}
    double min_distance;             // 2 pi / k_-, m
    bool plus_channel_neglected;     // suppression_ratio < 0.05
    std::string warning;             // non-empty when the branch is kept
};

/// Polder tensor components at (omega, k):
/// chi_d = omega_M omega_H' / (omega_H'^2 - omega^2), chi_a = omega omega_M / (...),
/// with omega_H' = omega_H + omega_M D_ex k^2.
SusceptibilityPair polder_susceptibility(const MaterialFilm& film, double omega, double k);

/// Surface-branch dispersion
/// omega_k^2 = omega_H'(omega_H' + omega_M) + (omega_M^2/4)(1 - e^{-2|k|d});
/// even in k.
double dispersion_omega(const MaterialFilm& film, double k);

/// Analytic d omega / d k; odd in k, cusp at k = 0.
double group_velocity(const MaterialFilm& film, double k);

/// (omega_-, omega_+) = D0 -/+ gamma_s mu0 H0.
std::pair<double, double> nv_frequencies(const MaterialFilm& film);

/// Positive k with dispersion_omega(k) = omega_target, by bisection to
/// relative resolution 1e-10. The mirrored solution is -k by symmetry.
double resonant_wavenumber(const MaterialFilm& film, double omega_target);

/// Coefficients A, B, C at omega(k) from the boundary-value closed forms
/// plus the magnon normalization condition.
SurfaceMode mode_amplitudes(const MaterialFilm& film, double k);

/// delta H_k = sqrt(2) C k e^{-x|k| + i k y} with polarization set by
/// sign(k); valid above the film (x > d/2, x measured from the midplane).
FieldFluctuation field_fluctuation(const MaterialFilm& film, const SurfaceMode& mode, double x,
                                   double y);

/// |g_{k,pol}| = gamma_s mu0 |delta H_k(r0) . e_pol| at the spin position
/// r0 = (d/2 + d_nv, 0, 0). Exactly zero when the mode polarization matches
/// pol (e_a . e_a = 0); spin_half applies the 1/sqrt(2) ladder prefactor.
double coupling_constant(const MaterialFilm& film, double k, Polarization pol,
                         bool spin_half = false);

/// Full pipeline at the spin resonance: wave numbers, couplings, J_q,
/// coherence length and validity ratios.
CouplingSummary dissipative_rate(const MaterialFilm& film);

/// Largest relative residual of the four potential boundary equations at
/// (omega(k), k) with the computed A, B, C and D recovered from the first
/// equation. Row-scaled; machine-small when the closed forms are consistent.
double boundary_residual(const MaterialFilm& film, double k);

}  // namespace magq

#endif
