#pragma once

#include <vector>

#include "txlab/model.hpp"
#include "txlab/scattering.hpp"

namespace txlab {

// Monochromatic coherent tone on one input port; all other ports silent.
struct DriveSpec {
    std::size_t port = 0;
    double omega = 0.0;           // [rad/s], nonzero
    cdouble amplitude{1.0, 0.0};  // [sqrt(rad/s)], nonzero
};

struct OracleOptions {
    // Multiplies the base step 1/(128 max(|omega|, max |A_ij|)); 0.5 halves
    // the step for convergence studies.
    double step_scale = 1.0;
};

// Integrates dc/dt = -A c - B c_in with fixed-step RK4 until transients decay
// (t = 22 / min(kappa/2), whole drive periods), then projects each output
// c_out,j = c_in,j + (B^T c)_j onto e^{-i omega t} over 5 further periods.
// Returns the complex amplitude ratio (output / drive) per port.
//
// Throws ConvergenceError when successive per-period projections move by more
// than 1e-8, and NumericalError when max(|omega|, max|A|) / min(kappa/2)
// exceeds 1e4 (too stiff for a fixed-step scheme).
std::vector<cdouble> steady_state_response(const ChainModel& model, const DriveSpec& drive,
                                           const OracleOptions& options = {});

// Drives every itinerant port at every listed frequency and returns the
// largest | |ratio| - |S_ij| | over all (frequency, input, output) triples.
// An empty frequency list gives 0.
double compare_with_scattering(const ChainModel& model, const std::vector<double>& omegas,
                               const OracleOptions& options = {});

}  // namespace txlab
