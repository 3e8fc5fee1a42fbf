#include "txlab/physics.hpp"

#include <cmath>
#include <string>

#include "txlab/constants.hpp"
#include "txlab/errors.hpp"

namespace txlab {

double bose_occupation(double omega, double temperature_k) {
    if (!(omega > 0.0))
        throw DomainError("bose_occupation: omega must be positive, got " + std::to_string(omega));
    if (temperature_k < 0.0)
        throw DomainError("bose_occupation: temperature must be nonnegative");
    if (temperature_k == 0.0) return 0.0;
    const double x = codata2018.hbar * omega / (codata2018.k_b * temperature_k);
    // expm1 keeps the classical limit kT/(hbar w) accurate for x << 1.
    return 1.0 / std::expm1(x);
}

double zero_point_amplitude(double m_eff_kg, double omega_m) {
    if (!(m_eff_kg > 0.0)) throw DomainError("zero_point_amplitude: mass must be positive");
    if (!(omega_m > 0.0)) throw DomainError("zero_point_amplitude: omega must be positive");
    return std::sqrt(codata2018.hbar / (2.0 * m_eff_kg * omega_m));
}

double intracavity_photon_number(double drive_amplitude, double detuning, double kappa) {
    if (!(kappa > 0.0)) throw DomainError("intracavity_photon_number: kappa must be positive");
    const double denom = detuning * detuning + 0.25 * kappa * kappa;
    return drive_amplitude * drive_amplitude / denom;
}

double linearized_coupling(double g_single, double n_photons) {
    if (n_photons < 0.0) throw DomainError("linearized_coupling: photon number must be nonnegative");
    return g_single * std::sqrt(n_photons);
}

double magnon_microwave_coupling(double gamma, double omega_e, double v_c, double n_spins) {
    if (!(omega_e > 0.0)) throw DomainError("magnon_microwave_coupling: omega_e must be positive");
    if (!(v_c > 0.0)) throw DomainError("magnon_microwave_coupling: mode volume must be positive");
    if (n_spins < 0.0) throw DomainError("magnon_microwave_coupling: spin number must be nonnegative");
    const double g0 = 0.5 * std::abs(gamma) *
                      std::sqrt(codata2018.hbar * omega_e * codata2018.mu0 / v_c);
    return g0 * std::sqrt(n_spins);
}

double magnon_optical_coupling(double theta_f, double eps_r, double n_spins, double n_cav) {
    if (!(eps_r > 0.0)) throw DomainError("magnon_optical_coupling: eps_r must be positive");
    if (!(n_spins > 0.0)) throw DomainError("magnon_optical_coupling: spin number must be positive");
    if (n_cav < 0.0) throw DomainError("magnon_optical_coupling: photon number must be nonnegative");
    const double g0 = codata2018.c * theta_f / (4.0 * std::sqrt(2.0 * eps_r * n_spins));
    return g0 * std::sqrt(n_cav);
}

double electro_optic_single_photon(double r, double eps_e, double eps_p, double eps_o,
                                   double omega_e, double omega_p, double omega_o,
                                   double v_e, double v_p, double v_o, double overlap) {
    if (!(eps_e > 0.0) || !(eps_p > 0.0) || !(eps_o > 0.0))
        throw DomainError("electro_optic_single_photon: permittivities must be positive");
    if (!(omega_e > 0.0) || !(omega_p > 0.0) || !(omega_o > 0.0))
        throw DomainError("electro_optic_single_photon: mode frequencies must be positive");
    if (!(v_e > 0.0) || !(v_p > 0.0) || !(v_o > 0.0))
        throw DomainError("electro_optic_single_photon: mode volumes must be positive");
    const double h = codata2018.hbar;
    return r * std::sqrt(eps_p * eps_o / eps_e) *
           std::sqrt(h * omega_e * omega_p * omega_o / (8.0 * codata2018.eps0 * v_e * v_p * v_o)) *
           overlap;
}

CollectiveCoupling rei_collective_coupling(double n_ions, double rabi, double g_e, double g_o,
                                           double delta2, double delta3) {
    if (n_ions < 0.0) throw DomainError("rei_collective_coupling: ion number must be nonnegative");
    if (delta2 == 0.0 || delta3 == 0.0)
        throw DomainError("rei_collective_coupling: intermediate detunings must be nonzero");
    CollectiveCoupling out;
    out.value = n_ions * rabi * g_e * g_o / (delta3 * delta2);
    out.adiabatic = std::abs(delta3) >= 10.0 * std::abs(g_o) &&
                    std::abs(delta2) >= 10.0 * std::abs(g_e) &&
                    std::abs(delta2 * delta3) >= 10.0 * rabi * rabi;
    return out;
}

}  // namespace txlab
