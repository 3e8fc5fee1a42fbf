#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "txlab/model.hpp"
#include "txlab/scattering.hpp"

namespace txlab {

// Susceptibilities, cooperativities, and port ratios of a chain at one probe
// frequency. Named chi/C fields are filled for 2- and 3-mode chains; the
// per-mode and per-link vectors cover arbitrary lengths.
struct ResonantResponse {
    std::vector<cdouble> chi;              // chi_mu(omega) = 1/(-i(omega - Omega_mu) + kappa_mu/2) [s]
    std::vector<double> link_cooperativity;  // 4 g_j^2 / (kappa_j kappa_j+1) per link

    cdouble chi_e{}, chi_m{}, chi_o{};
    double gamma_em = 0.0;   // 2 g^2 Re chi_e, broadening of the intermediate mode [rad/s]
    double gamma_om = 0.0;   // 2 zeta^2 Re chi_o
    double c_em = 0.0, c_om = 0.0;   // one-stage cooperativities
    double c_eo = 0.0;               // zero-stage cooperativity
    double eta_e = 0.0, eta_o = 0.0; // endpoint external port ratios kappa_ext/kappa
    double eta_m = 0.0;              // interior itinerant ratio, 0 without such a port
};

struct AddedNoise {
    double n_out_o = 0.0;   // occupancy leaving the optical itinerant port
    double n_out_e = 0.0;   // occupancy leaving the microwave itinerant port
    double n_add_o = 0.0;   // n_out_o / eta, +inf when eta = 0
    double n_add_e = 0.0;   // n_out_e / eta
};

// The six on-resonance scattering probabilities of a fully resonant one-stage
// chain, by source port: microwave input, microwave bath, intermediate bath.
struct OnResonanceElements {
    double opt_from_mw_in = 0.0;
    double opt_from_mw_bath = 0.0;
    double opt_from_int_bath = 0.0;
    double mw_from_mw_in = 0.0;
    double mw_from_mw_bath = 0.0;
    double mw_from_int_bath = 0.0;
};

struct CapacityGrid {
    double omega_min = 0.0;   // [rad/s]
    double omega_max = 0.0;
    std::size_t points = 401; // initial node count, halved in step until converged
};

struct CapacityResult {
    double q1_rate = 0.0;          // qubits/s
    double quadrature_error = 0.0; // last refinement delta
    bool unity_clipped = false;    // some nodes had eta >= 1 and were clamped
    std::vector<double> omega;     // final grid
    std::vector<double> eta;
    std::vector<double> q1_values;
};

struct SweepRange {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t points = 1;   // log-spaced, endpoints included
};

struct SweepPoint {
    double c_em = 0.0, c_om = 0.0;
    double eta = 0.0;
    double n_add_o = 0.0, n_add_e = 0.0;
};

struct PerformanceReport {
    double omega_peak = 0.0;       // [rad/s]
    double eta_peak = 0.0;
    double eta_internal = 0.0;     // eta_peak / (eta_e eta_o)
    double n_add_o = 0.0, n_add_e = 0.0;   // at the peak
    double bandwidth_analytic = 0.0;       // [rad/s]
    double bandwidth_numeric = 0.0;        // [rad/s], NaN when no half-max crossing exists
    double q1_peak = 0.0;
    double q1_rate = 0.0;          // qubits/s over the sample window
    bool unity_clipped = false;
    ResonantResponse response;     // evaluated at the nominal resonance
    std::vector<double> omega_samples;
    std::vector<double> eta_samples;
};

ResonantResponse susceptibilities(const ChainModel& model, double omega);

// |S(optical itinerant out, microwave itinerant in)|^2 at probe omega.
double efficiency(const ChainModel& model, double omega);

// Same quantity computed from the susceptibility expression instead of a
// matrix solve; defined for 2- and 3-mode chains.
double efficiency_from_susceptibilities(const ChainModel& model, double omega);

double efficiency_closed_form_one_stage(double c_em, double c_om, double eta_e, double eta_o);
double efficiency_closed_form_zero_stage(double c_eo, double eta_e, double eta_o);
double efficiency_closed_form_half_cavity(double c_um, double eta_u, double eta_m);

// eta / (eta_e eta_o); throws DomainError when a port ratio is zero.
double internal_efficiency(double eta, double eta_e, double eta_o);

AddedNoise added_noise(const ChainModel& model, double omega, const NoiseEnvironment& env);

// On-resonance input-referred noise of a fully resonant chain in terms of
// cooperativities and bath occupancies (optical occupancies zero).
AddedNoise added_noise_closed_form_one_stage(double c_em, double c_om, double eta_e, double eta_o,
                                             double n_wg, double n_e_th, double n_m_th);
AddedNoise added_noise_closed_form_zero_stage(double c_eo, double eta_e, double eta_o,
                                              double n_wg, double n_e_th);

OnResonanceElements onres_matrix_elements(double c_em, double c_om, double eta_e, double eta_o);

// One-stage: kappa_m (1 + C_em + C_om). Zero-stage: min(kappa_e, kappa_o)(1 + C_eo).
// Longer chains: min over modes of kappa_j (1 + sum of cooperativities of the
// links touching mode j).
double bandwidth_analytic(const ChainModel& model);

// FWHM of eta(omega) by peak search, outward bracketing, and bisection to
// 1e-6 relative resolution. Throws WindowError when eta has no half-max
// crossing (e.g. decoupled chains).
double bandwidth_numeric(const ChainModel& model);

// Peak of eta(omega): candidate centers are the mode frequencies plus a coarse
// scan; returns (omega_peak, eta_peak).
struct Peak {
    double omega = 0.0;
    double eta = 0.0;
};
Peak efficiency_peak(const ChainModel& model);

// max(log2(eta/(1-eta)), 0); exactly +inf at eta = 1. Values within a few ulp
// of an integer snap to it so binary-rational efficiencies give exact bits.
double q1(double eta);

CapacityResult continuous_capacity(const ChainModel& model, const CapacityGrid& grid);

// Capacity of an idealized flat passband: q1(eta) * width. Width in ordinary
// frequency [Hz]; result in qubits/s.
double flat_capacity(double eta, double width_hz);

// Rescales the one-stage couplings to hit each (C_em, C_om) grid point and
// evaluates on-resonance efficiency and added noise. Grids are log-spaced.
std::vector<SweepPoint> sweep_tradeoff(const ChainModel& one_stage, const SweepRange& c_em,
                                       const SweepRange& c_om, const NoiseEnvironment& env);

// Photon-flux ratio (P_L / hbar w_L) / (I_M S_M / hbar w_M) of a laser output
// against a microwave input of intensity I_M over cross section S_M.
double rydberg_efficiency(double p_laser_w, double omega_laser, double intensity_mw_w_m2,
                          double cross_section_m2, double omega_mw);

// Full figure-of-merit bundle for one model + environment. The eta(omega)
// samples and the capacity integral use [grid.omega_min, grid.omega_max]; a
// zero-width grid defaults to resonance +- 10 analytic bandwidths.
PerformanceReport performance_report(const ChainModel& model, const NoiseEnvironment& env,
                                     CapacityGrid grid = {});

}  // namespace txlab
