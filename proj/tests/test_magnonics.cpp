#include "magq/magnonics.hpp"

#include "doctest.h"
#include "magq/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace magq;

namespace {
const MaterialFilm kFilm = MaterialFilm::nv_yig_defaults();
}

TEST_CASE("polder susceptibility") {
    SUBCASE("static limit") {
        const SusceptibilityPair chi = polder_susceptibility(kFilm, 0.0, 0.0);
        CHECK(chi.chi_d == doctest::Approx(kFilm.omega_m() / kFilm.omega_h()).epsilon(1e-14));
        CHECK(chi.chi_a == 0.0);
    }
    SUBCASE("component ratio identity") {
        for (double k : {1e5, 4e6}) {
            for (double omega : {5e9, 2.5e10}) {
                const SusceptibilityPair chi = polder_susceptibility(kFilm, omega, k);
                const double ohp = kFilm.omega_h() + kFilm.omega_m() * kFilm.d_ex * k * k;
                CHECK(chi.chi_a / chi.chi_d == doctest::Approx(omega / ohp).epsilon(1e-13));
            }
        }
    }
    SUBCASE("direct re-evaluation at the lower resonance") {
        const double omega_minus = nv_frequencies(kFilm).first;
        const double k = resonant_wavenumber(kFilm, omega_minus);
        const SusceptibilityPair chi = polder_susceptibility(kFilm, omega_minus, k);
        const double om = kFilm.omega_m();
        const double ohp = kFilm.omega_h() + om * kFilm.d_ex * k * k;
        const double den = ohp * ohp - omega_minus * omega_minus;
        CHECK(chi.chi_d == doctest::Approx(om * ohp / den).epsilon(1e-14));
        CHECK(chi.chi_a == doctest::Approx(omega_minus * om / den).epsilon(1e-14));
        CHECK(std::isfinite(chi.chi_d));
    }
    SUBCASE("pole proximity is rejected") {
        const double ohp = kFilm.omega_h();
        CHECK_THROWS_AS(polder_susceptibility(kFilm, ohp, 0.0), singularity_error);
    }
}

TEST_CASE("dispersion") {
    SUBCASE("band bottom") {
        CHECK(dispersion_omega(kFilm, 0.0) == doctest::Approx(7563343808.455634).epsilon(1e-12));
    }
    SUBCASE("exchange-free large-k limit") {
        MaterialFilm film = kFilm;
        film.d_ex = 1e-22;  // effectively zero while staying positive
        const double limit = film.omega_h() + film.omega_m() / 2.0;
        CHECK(dispersion_omega(film, 500.0 / film.d) == doctest::Approx(limit).epsilon(1e-9));
    }
    SUBCASE("even in k, exactly") {
        for (double k : {1e4, 3e6, 7e7}) {
            CHECK(dispersion_omega(kFilm, k) == dispersion_omega(kFilm, -k));
        }
    }
    SUBCASE("strictly increasing for k > 0") {
        double prev = dispersion_omega(kFilm, 10.0);
        for (int i = 1; i <= 1000; ++i) {
            const double k = std::pow(10.0, 1.0 + 7.0 * i / 1000.0);
            const double w = dispersion_omega(kFilm, k);
            CHECK(w > prev);
            prev = w;
        }
    }
}

TEST_CASE("group velocity") {
    SUBCASE("matches central finite differences") {
        for (double k : {-3e7, -4.8e6, -2e5, 2e5, 4.8e6, 3e7}) {
            const double h = 1e-6 * std::abs(k);
            const double fd =
                (dispersion_omega(kFilm, k + h) - dispersion_omega(kFilm, k - h)) / (2.0 * h);
            CHECK(group_velocity(kFilm, k) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
    SUBCASE("odd in k, exactly") {
        for (double k : {2e5, 4.8e6}) {
            CHECK(group_velocity(kFilm, k) == -group_velocity(kFilm, -k));
        }
    }
    SUBCASE("positive at the lower resonance") {
        const double k = resonant_wavenumber(kFilm, nv_frequencies(kFilm).first);
        CHECK(group_velocity(kFilm, k) > 0.0);
    }
    SUBCASE("cusp at zero") { CHECK_THROWS_AS(group_velocity(kFilm, 0.0), std::domain_error); }
}

TEST_CASE("spin transition frequencies") {
    const auto [lo, hi] = nv_frequencies(kFilm);
    CHECK(lo == doctest::Approx(1.632e10).epsilon(1e-3));
    CHECK(hi == doctest::Approx(1.984e10).epsilon(1e-3));
    CHECK(hi - lo == doctest::Approx(2.0 * kFilm.gamma_s * kFilm.mu0_h0).epsilon(1e-13));

    MaterialFilm zero_field = kFilm;
    zero_field.mu0_h0 = 1e-30;
    CHECK_THROWS_AS(nv_frequencies(zero_field), std::domain_error);  // fails validate()

    MaterialFilm strong = kFilm;
    strong.mu0_h0 = 0.2;  // omega_h > d0
    CHECK_THROWS_AS(nv_frequencies(strong), level_crossing_error);
}

TEST_CASE("resonant wavenumber") {
    const auto [omega_minus, omega_plus] = nv_frequencies(kFilm);

    SUBCASE("lower resonance sits at a micron-scale wavelength") {
        const double k = resonant_wavenumber(kFilm, omega_minus);
        CHECK(2.0 * std::numbers::pi / k == doctest::Approx(1.3e-6).epsilon(0.10));
    }
    SUBCASE("upper resonance is much shorter") {
        const double k_minus = resonant_wavenumber(kFilm, omega_minus);
        const double k_plus = resonant_wavenumber(kFilm, omega_plus);
        CHECK(k_plus > 2.0 * k_minus);
    }
    SUBCASE("round trip") {
        const double k_ref = 3.7e6;
        const double k = resonant_wavenumber(kFilm, dispersion_omega(kFilm, k_ref));
        CHECK(k == doctest::Approx(k_ref).epsilon(1e-9));
    }
    SUBCASE("below the band bottom") {
        CHECK_THROWS_AS(resonant_wavenumber(kFilm, 1e9), out_of_band_error);
    }
}

TEST_CASE("mode amplitudes") {
    SUBCASE("boundary-condition residuals stay at machine level") {
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> u(0.05 / kFilm.d, 20.0 / kFilm.d);
        for (int i = 0; i < 100; ++i) {
            const double k = (i % 2 ? -1.0 : 1.0) * u(rng);
            CHECK(boundary_residual(kFilm, k) < 1e-9);
        }
    }
    SUBCASE("normalization scales with the cross section") {
        const double k = 4.0e6;
        const SurfaceMode base = mode_amplitudes(kFilm, k);
        MaterialFilm doubled = kFilm;
        doubled.l_y *= 2.0;
        const SurfaceMode wide = mode_amplitudes(doubled, k);
        const double ratio = std::norm(wide.coeff_a) / std::norm(base.coeff_a);
        CHECK(ratio == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("polarization is locked to the propagation direction") {
        CHECK(mode_amplitudes(kFilm, 2e6).polarization == Polarization::minus);
        CHECK(mode_amplitudes(kFilm, -2e6).polarization == Polarization::plus);
    }
}

TEST_CASE("field fluctuation above the film") {
    const SurfaceMode mode = mode_amplitudes(kFilm, 3e6);

    SUBCASE("exponential decay law") {
        const double x1 = kFilm.d;
        const double dx = 50e-9;
        const auto f1 = field_fluctuation(kFilm, mode, x1, 0.0);
        const auto f2 = field_fluctuation(kFilm, mode, x1 + dx, 0.0);
        CHECK(std::abs(f2.amplitude) / std::abs(f1.amplitude) ==
              doctest::Approx(std::exp(-std::abs(mode.k) * dx)).epsilon(1e-12));
    }
    SUBCASE("surface localization asymmetry favors positive k") {
        const double x0 = kFilm.d / 2.0 + kFilm.d_nv;
        const SurfaceMode fwd = mode_amplitudes(kFilm, 4.8e6);
        const SurfaceMode bwd = mode_amplitudes(kFilm, -4.8e6);
        const double a_fwd = std::abs(field_fluctuation(kFilm, fwd, x0, 0.0).amplitude);
        const double a_bwd = std::abs(field_fluctuation(kFilm, bwd, x0, 0.0).amplitude);
        CHECK(a_fwd > a_bwd);
    }
    SUBCASE("inside the film is rejected") {
        CHECK_THROWS_AS(field_fluctuation(kFilm, mode, kFilm.d / 4.0, 0.0), out_of_region_error);
    }
}

TEST_CASE("coupling constants") {
    SUBCASE("exact chirality zero on the co-polarized branch") {
        for (double k : {5e5, 4.8e6, 3e7}) {
            CHECK(coupling_constant(kFilm, k, Polarization::minus) == 0.0);
            CHECK(coupling_constant(kFilm, k, Polarization::plus) > 0.0);
            CHECK(coupling_constant(kFilm, -k, Polarization::plus) == 0.0);
            CHECK(coupling_constant(kFilm, -k, Polarization::minus) > 0.0);
        }
    }
    SUBCASE("spin-1/2 variant carries the ladder prefactor") {
        const double g1 = coupling_constant(kFilm, 2e6, Polarization::plus);
        const double ghalf = coupling_constant(kFilm, 2e6, Polarization::plus, true);
        CHECK(ghalf == doctest::Approx(g1 / std::sqrt(2.0)).epsilon(1e-14));
    }
}

TEST_CASE("dissipative rate summary") {
    const CouplingSummary sum = dissipative_rate(kFilm);

    SUBCASE("headline numbers") {
        CHECK(sum.j_q == doctest::Approx(190.0).epsilon(0.20));
        CHECK(sum.min_distance == doctest::Approx(1.3e-6).epsilon(0.10));
        CHECK(sum.l_m == doctest::Approx(3e-3).epsilon(0.05));
        CHECK(sum.suppression_ratio > 3e-3);
        CHECK(sum.suppression_ratio < 3e-2);
        CHECK(sum.markov_ratio == doctest::Approx(1e-3).epsilon(1.0));
        CHECK(sum.plus_channel_neglected);
        CHECK(sum.warning.empty());
    }
    SUBCASE("independent of the film length") {
        MaterialFilm longer = kFilm;
        longer.l_y *= 2.0;
        const CouplingSummary other = dissipative_rate(longer);
        CHECK(std::abs(other.j_q - sum.j_q) <= 1e-10 * sum.j_q);
    }
    SUBCASE("halves when the film width doubles") {
        MaterialFilm wider = kFilm;
        wider.l_z *= 2.0;
        const CouplingSummary other = dissipative_rate(wider);
        CHECK(other.j_q == doctest::Approx(sum.j_q / 2.0).epsilon(1e-10));
    }
}

TEST_CASE("material validation") {
    MaterialFilm bad = kFilm;
    bad.l_z = bad.l_y * 2.0;  // violates l_y > l_z
    CHECK_THROWS_AS(bad.validate(), std::domain_error);

    MaterialFilm negative = kFilm;
    negative.m_s = -1.0;
    CHECK_THROWS_AS(negative.validate(), std::domain_error);
}
