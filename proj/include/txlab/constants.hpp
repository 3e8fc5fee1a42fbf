#pragma once

namespace txlab {

// CODATA 2018. Single source of truth; every module pulls constants from here.
struct PhysicalConstants {
    double hbar;   // reduced Planck constant [J s]
    double k_b;    // Boltzmann constant [J/K]
    double c;      // speed of light in vacuum [m/s]
    double eps0;   // vacuum permittivity [F/m]
    double mu0;    // vacuum permeability [H/m]
};

inline constexpr PhysicalConstants codata2018{
    1.054571817e-34,
    1.380649e-23,
    299792458.0,
    8.8541878128e-12,
    1.25663706212e-6,
};

inline constexpr double two_pi = 6.283185307179586476925286766559;

}  // namespace txlab
