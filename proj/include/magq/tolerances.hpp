#ifndef MAGQ_TOLERANCES_HPP
#define MAGQ_TOLERANCES_HPP

namespace magq::tol {

// All numerical tolerances live here so tests and library agree on one set.
inline constexpr double hermiticity = 1e-12;      // max |rho - rho^dag| entrywise
inline constexpr double trace = 1e-10;            // |Tr rho - 1|
inline constexpr double positivity = -1e-9;       // min eigenvalue of rho
inline constexpr double expm_accuracy = 1e-10;    // relative accuracy target of expm
inline constexpr double normalize = 1e-12;        // |norm - 1| after PureState::normalized
inline constexpr double trace_preserve = 1e-10;   // vec(I)^dag L row of a Liouvillian
inline constexpr double null_space = 1e-8;        // singular-value cut for steady states
inline constexpr double steady_residual = 1e-10;  // ||L vec(rho_ss)||
inline constexpr double trace_drift_soft = 1e-12; // renormalize beyond this
inline constexpr double trace_drift_hard = 1e-8;  // fail beyond this
inline constexpr double spectrum_match = 1e-9;    // closed-form vs numeric eigenvalues
inline constexpr double phase_mod_2pi = 1e-9;     // "phase difference = 0 mod 2pi" check
inline constexpr double protocol_time_rel = 1e-4; // bisection resolution on t_p
inline constexpr double benchmark_rel = 1e-2;     // bisection resolution on T1/Tphi
inline constexpr double wavenumber_rel = 1e-10;   // bisection resolution on resonant k

}  // namespace magq::tol

#endif
