#include "magq/magnonics.hpp"

#include "magq/errors.hpp"
#include "magq/tolerances.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace magq {

namespace {

constexpr double kMu0 = 4.0e-7 * std::numbers::pi;  // T m / A
constexpr double kHbar = 1.054571817e-34;           // J s
constexpr std::complex<double> kI{0.0, 1.0};

double omega_h_prime(const MaterialFilm& film, double k) {
    return film.omega_h() + film.omega_m() * film.d_ex * k * k;
}

}  // namespace

MaterialFilm MaterialFilm::nv_yig_defaults() {
    MaterialFilm film;
    film.d0 = 2.0 * std::numbers::pi * 2.877e9;
    film.gamma_s = 1.76e11;
    film.d = 200e-9;
    film.l_y = 10e-6;
    film.l_z = 1e-6;
    film.d_ex = 3.086e-16;
    film.m_s = 1.39e5;
    film.d_nv = 100e-9;  // half the film thickness
    film.mu0_h0 = 1e-2;
    film.tau_m = 1e-6;
    return film;
}

void MaterialFilm::validate() const {
    const double vals[] = {d0, gamma_s, d, l_y, l_z, d_ex, m_s, d_nv, mu0_h0, tau_m};
    for (double v : vals) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::domain_error("MaterialFilm: all parameters must be positive and finite");
        }
    }
    if (!(l_y > l_z && l_z > d)) {
        throw std::domain_error("MaterialFilm: expected l_y > l_z > d");
    }
}

double MaterialFilm::omega_h() const { return gamma_s * mu0_h0; }

double MaterialFilm::omega_m() const { return gamma_s * kMu0 * m_s; }

SusceptibilityPair polder_susceptibility(const MaterialFilm& film, double omega, double k) {
    film.validate();
    const double om = film.omega_m();
    const double ohp = omega_h_prime(film, k);
    const double den = ohp * ohp - omega * omega;
    if (std::abs(den) < 1e-6 * om * om) {
        throw singularity_error("polder_susceptibility: too close to the resonance pole");
    }
    return SusceptibilityPair{om * ohp / den, omega * om / den};
}

double dispersion_omega(const MaterialFilm& film, double k) {
    film.validate();
    const double om = film.omega_m();
    const double ohp = omega_h_prime(film, k);
    const double dip = om * om / 4.0 * (1.0 - std::exp(-2.0 * std::abs(k) * film.d));
    return std::sqrt(ohp * (ohp + om) + dip);
}

double group_velocity(const MaterialFilm& film, double k) {
    film.validate();
    if (k == 0.0) throw std::domain_error("group_velocity: cusp at k = 0");
    const double om = film.omega_m();
    const double ohp = omega_h_prime(film, k);
    const double sgn = k > 0.0 ? 1.0 : -1.0;
    const double d_om2 = (2.0 * ohp + om) * (2.0 * om * film.d_ex * k) +
                         om * om / 2.0 * film.d * sgn * std::exp(-2.0 * std::abs(k) * film.d);
    return d_om2 / (2.0 * dispersion_omega(film, k));
}

std::pair<double, double> nv_frequencies(const MaterialFilm& film) {
    film.validate();
    const double oh = film.omega_h();
    if (oh >= film.d0) {
        throw level_crossing_error("nv_frequencies: field splitting exceeds the zero-field gap");
    }
    return {film.d0 - oh, film.d0 + oh};
}

double resonant_wavenumber(const MaterialFilm& film, double omega_target) {
    film.validate();
    if (omega_target <= dispersion_omega(film, 0.0)) {
        throw out_of_band_error("resonant_wavenumber: target below the band bottom");
    }
    double k_lo = 0.0;
    double k_hi = 1.0 / film.d;
    while (dispersion_omega(film, k_hi) < omega_target) {
        k_lo = k_hi;
        k_hi *= 2.0;
        if (k_hi > 1e10) {
            throw out_of_band_error("resonant_wavenumber: no resonance below k = 1e10");
        }
    }
    while ((k_hi - k_lo) > tol::wavenumber_rel * k_hi) {
        const double mid = 0.5 * (k_lo + k_hi);
        if (dispersion_omega(film, mid) < omega_target) {
            k_lo = mid;
        } else {
            k_hi = mid;
        }
    }
    return 0.5 * (k_lo + k_hi);
}

SurfaceMode mode_amplitudes(const MaterialFilm& film, double k) {
    film.validate();
    if (k == 0.0) throw std::domain_error("mode_amplitudes: k must be nonzero");

    const double omega = dispersion_omega(film, k);
    const auto [chi_d, chi_a] = polder_susceptibility(film, omega, k);
    const double ak = std::abs(k);
    const double sk = k > 0.0 ? 1.0 : -1.0;
    const double th = std::tanh(k * film.d / 2.0);
    const double sh = std::sinh(k * film.d);
    const double ch = std::cosh(k * film.d);

    // Normalization of the magnetization fluctuation over the film volume.
    const double a1 = (chi_a - (chi_d * chi_d + chi_d - chi_a * chi_a) * sk) * th +
                      chi_a * sk - chi_d;
    const double a2 = (chi_a * sk - chi_d) * th - (chi_d * chi_d + chi_d - chi_a * chi_a) * sk +
                      chi_a;
    const double cross_section = film.l_y * film.l_z;
    const std::complex<double> root =
        std::sqrt(std::complex<double>(film.gamma_s * kHbar * film.m_s /
                                       (2.0 * cross_section * k * a1 * a2 * sh)));
    if (!(std::abs(root) > 0.0) || !std::isfinite(std::abs(root))) {
        throw degenerate_mode_error("mode_amplitudes: degenerate normalization product");
    }
    const std::complex<double> coeff_a =
        -sk * root * (sk * (chi_a + (1.0 + chi_d) * th) + 1.0);

    const std::complex<double> coeff_b = kI * coeff_a *
        (th * (ak - chi_a * k) + (1.0 + chi_d) * k) /
        (-chi_a * k + ak + (1.0 + chi_d) * k * th);

    const double sh_half = std::sinh(k * film.d / 2.0);
    const double ch_half = std::cosh(k * film.d / 2.0);
    const std::complex<double> coeff_c = kI * coeff_a *
        ((ak - chi_a * k) * sh + (1.0 + chi_d) * k * ch) /
        ((ak - chi_a * k) * ch_half + (1.0 + chi_d) * k * sh_half) *
        std::exp(ak * film.d / 2.0);

    return SurfaceMode{k,
                       omega,
                       group_velocity(film, k),
                       coeff_a,
                       coeff_b,
                       coeff_c,
                       k > 0.0 ? Polarization::minus : Polarization::plus};
}

FieldFluctuation field_fluctuation(const MaterialFilm& film, const SurfaceMode& mode, double x,
                                   double y) {
    if (x <= film.d / 2.0) {
        throw out_of_region_error("field_fluctuation: point is not above the film");
    }
    const double ak = std::abs(mode.k);
    const std::complex<double> amp = std::numbers::sqrt2 * mode.coeff_c * mode.k *
                                     std::exp(std::complex<double>(-x * ak, mode.k * y));
    return FieldFluctuation{amp, mode.polarization};
}

double coupling_constant(const MaterialFilm& film, double k, Polarization pol, bool spin_half) {
    const SurfaceMode mode = mode_amplitudes(film, k);
    // e_+ . e_- = 1, e_+ . e_+ = e_- . e_- = 0: only the opposite circular
    // component of the mode field couples.
    if (pol == mode.polarization) return 0.0;
    const double x0 = film.d / 2.0 + film.d_nv;
    const FieldFluctuation field = field_fluctuation(film, mode, x0, 0.0);
    double g = film.gamma_s * kMu0 * std::abs(field.amplitude);
    if (spin_half) g /= std::numbers::sqrt2;
    return g;
}

CouplingSummary dissipative_rate(const MaterialFilm& film) {
    const auto [omega_minus, omega_plus] = nv_frequencies(film);
    const double k_minus = resonant_wavenumber(film, omega_minus);
    const double k_plus = resonant_wavenumber(film, omega_plus);

    // The qubit branch couples to right movers (e_- modes, +k resonance);
    // the neglected branch to left movers.
    const double g_minus_branch = coupling_constant(film, k_minus, Polarization::plus);
    const double g_plus_branch = coupling_constant(film, -k_plus, Polarization::minus);
    const double suppression = g_plus_branch / g_minus_branch;

    const double v_group = std::abs(group_velocity(film, k_minus));
    // One-dimensional density of states L_y/(2 pi) cancels the 2 pi.
    const double j_q = film.l_y * g_minus_branch * g_minus_branch / v_group;

    // Long-wavelength dipolar propagation speed at the qubit frequency;
    // sets the usable coherence length l_m = v tau_m.
    const double om = film.omega_m();
    const double v_lw = om * om * film.d / (4.0 * omega_minus);
    const double l_m = v_lw * film.tau_m;

    // Drive time constant 2/sqrt(delta^2 + 4 Omega^2) at the resonant
    // operating point zeta = 0.27.
    const double omega_rabi = j_q / (2.0 * std::numbers::sqrt2 * 0.27);
    const double drive_ratio = film.tau_m * omega_rabi;

    CouplingSummary out;
    out.omega_minus = omega_minus;
    out.omega_plus = omega_plus;
    out.k_minus = k_minus;
    out.k_plus = k_plus;
    out.g_minus_branch = g_minus_branch;
    out.g_plus_branch = g_plus_branch;
    out.suppression_ratio = suppression;
    out.j_q = j_q;
    out.v_group_kq = v_group;
    out.l_m = l_m;
    out.markov_ratio = j_q / (v_group / l_m);
    out.drive_ratio = drive_ratio;
    out.min_distance = 2.0 * std::numbers::pi / k_minus;
    out.plus_channel_neglected = suppression < 0.05;
    if (!out.plus_channel_neglected) {
        out.warning = "suppression ratio " + std::to_string(suppression) +
                      " >= 0.05; the second spin transition is not negligible";
    }
    return out;
}

double boundary_residual(const MaterialFilm& film, double k) {
    const SurfaceMode mode = mode_amplitudes(film, k);
    const auto [chi_d, chi_a] = polder_susceptibility(film, mode.omega, k);
    const double ak = std::abs(k);
    const double sh = std::sinh(k * film.d / 2.0);
    const double ch = std::cosh(k * film.d / 2.0);
    const double damp = std::exp(-ak * film.d / 2.0);

    // The four equations as an explicit system M x = 0, x = (A, B, C, D);
    // D is recovered from the first row.
    Eigen::Matrix4cd m;
    m << -kI * sh, ch, 0.0, -damp,                                  // potential, bottom
        kI * sh, ch, -damp, 0.0,                                    // potential, top
        kI * k * ((1.0 + chi_d) * ch - chi_a * sh),
        k * (chi_a * ch - (1.0 + chi_d) * sh), 0.0, -ak * damp,     // normal flux, bottom
        kI * k * ((1.0 + chi_d) * ch + chi_a * sh),
        k * (chi_a * ch + (1.0 + chi_d) * sh), ak * damp, 0.0;      // normal flux, top
    Eigen::Vector4cd x;
    x << mode.coeff_a, mode.coeff_b, mode.coeff_c,
        (-kI * mode.coeff_a * sh + mode.coeff_b * ch) / damp;

    const Eigen::Vector4cd r = m * x;
    const double x_inf = x.cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        // Row-wise backward error |r_i| / (||M_i||_inf ||x||_inf).
        const double row_scale = m.row(i).cwiseAbs().maxCoeff();
        if (row_scale > 0.0 && x_inf > 0.0) {
            worst = std::max(worst, std::abs(r(i)) / (row_scale * x_inf));
        }
    }
    return worst;
}

}  // namespace magq
