#pragma once

namespace txlab {

// Thermal occupation 1/(e^{hbar w / kB T} - 1) of a bath at temperature T.
// Returns exactly 0 at T = 0. Throws DomainError for w <= 0 or T < 0.
double bose_occupation(double omega, double temperature_k);

// Mechanical zero-point amplitude sqrt(hbar / (2 m_eff w_m)) [m].
double zero_point_amplitude(double m_eff_kg, double omega_m);

// Steady-state intracavity photon number |E|^2 / (dw^2 + kappa^2/4) for a
// coherent drive of amplitude E [rad/s] detuned by dw from the cavity.
double intracavity_photon_number(double drive_amplitude, double detuning, double kappa);

// Pump-enhanced coupling g sqrt(n) [rad/s].
double linearized_coupling(double g_single, double n_photons);

// Magnon-microwave coupling g0 sqrt(N_s) with g0 = (|gamma|/2) sqrt(hbar w_e mu0 / V_c).
// gamma: gyromagnetic ratio [rad/(s T)], V_c: cavity mode volume [m^3].
double magnon_microwave_coupling(double gamma, double omega_e, double v_c, double n_spins);

// Magnon-optical coupling g_mo0 sqrt(n_cav) with g_mo0 = c theta_F / (4 sqrt(2 eps_r N_s)).
// theta_f: Faraday rotation per unit length [rad/m].
double magnon_optical_coupling(double theta_f, double eps_r, double n_spins, double n_cav);

// Single-photon electro-optic coupling
//   r sqrt(eps_p eps_o / eps_e) sqrt(hbar w_e w_p w_o / (8 eps0 V_e V_p V_o)) * overlap,
// where overlap is the caller-supplied value of the normalized triple-mode integral.
double electro_optic_single_photon(double r, double eps_e, double eps_p, double eps_o,
                                   double omega_e, double omega_p, double omega_o,
                                   double v_e, double v_p, double v_o, double overlap);

// Collective coupling of a homogeneous three-level ion ensemble after adiabatic
// elimination of the excited states: N Omega g_e g_o / (delta3 delta2).
// `adiabatic` reports whether the elimination margins hold with a factor of 10:
// |delta3| >= 10 |g_o|, |delta2| >= 10 |g_e|, |delta2 delta3| >= 10 |Omega|^2.
// A violated margin is a warning, not an error.
struct CollectiveCoupling {
    double value;    // [rad/s]
    bool adiabatic;
};
CollectiveCoupling rei_collective_coupling(double n_ions, double rabi, double g_e, double g_o,
                                           double delta2, double delta3);

}  // namespace txlab
