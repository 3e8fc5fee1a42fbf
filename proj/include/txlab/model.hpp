#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace txlab {

enum class ModeKind { microwave, intermediate, optical, custom };

// One bosonic mode of the chain. Frequencies and rates are angular [rad/s];
// kappa_int + kappa_ext must be positive (every mode dissipates somewhere).
struct ModeSpec {
    ModeKind label = ModeKind::custom;
    double omega = 0.0;
    double kappa_int = 0.0;
    double kappa_ext = 0.0;       // 0 means no itinerant port
    double bath_temperature_k = 0.0;

    double kappa() const { return kappa_int + kappa_ext; }
};

// Beam-splitter link between two adjacent modes; strength is real nonnegative
// (coupling phases are gauged away).
struct CouplingSpec {
    std::size_t mode_a = 0;
    std::size_t mode_b = 0;
    double strength = 0.0;
};

// Red-detuned pump on the optical (last) mode. detuning = omega_pump - omega_o
// and must be negative; pump_frequency is 0 when only the detuning is known.
struct PumpSpec {
    double detuning = 0.0;
    double pump_frequency = 0.0;
};

struct NoiseEnvironment {
    double waveguide_temperature_k = 0.0;
    // Optical-frequency thermal occupancies are ~1e-14 even at room
    // temperature; by default they are pinned to exactly zero.
    bool optical_occupancy_forced_zero = true;
};

enum class PortClass { itinerant, bath };

struct Port {
    std::size_t mode = 0;
    PortClass kind = PortClass::bath;
    double rate = 0.0;            // [rad/s], always > 0 (zero-rate ports are dropped)
};

// Validated linear transduction chain, microwave end first, optical end last.
// Immutable after construction; builders are the only way to get a valid one.
//
// Port order: mode-by-mode, itinerant before bath, except that itinerant
// ports on interior modes are appended after the block so the canonical
// one-stage ports stay at (e,in) (e,th) (m,th) (o,in) (o,th).
struct ChainModel {
    std::vector<ModeSpec> modes;
    std::vector<CouplingSpec> couplings;   // normalized to (i, i+1) order
    PumpSpec pump;
    std::vector<Port> ports;

    std::size_t n_modes() const { return modes.size(); }
    std::size_t n_ports() const { return ports.size(); }

    // Frequency of mode mu as it enters the drift matrix: the pumped optical
    // mode rotates at the pump, so its entry is -detuning; every other mode
    // contributes its lab frequency.
    double effective_frequency(std::size_t mu) const;

    // Probe frequency at which the chain is nominally resonant (-detuning).
    double resonance_frequency() const { return -pump.detuning; }

    bool has_port(std::size_t mode, PortClass kind) const;
    std::size_t port_index(std::size_t mode, PortClass kind) const;  // throws if absent

    // Strength of the link between adjacent modes a and b; 0 if uncoupled.
    double coupling_between(std::size_t a, std::size_t b) const;
};

// General linear chain: couplings must form the path (0,1),(1,2),...,(n-2,n-1)
// in some order, endpoints must have itinerant ports, pump must be red-detuned.
ChainModel build_chain(std::vector<ModeSpec> modes, std::vector<CouplingSpec> couplings,
                       PumpSpec pump);

// Microwave--intermediate--optical chain with couplings g (e-m) and zeta (m-o).
// The intermediate mode may not have an itinerant port.
ChainModel build_one_stage(const ModeSpec& e, const ModeSpec& m, const ModeSpec& o,
                           double g, double zeta, PumpSpec pump);

// Directly coupled microwave--optical pair; both modes need itinerant ports.
ChainModel build_zero_stage(const ModeSpec& e, const ModeSpec& o, double g_eo, PumpSpec pump);

const char* to_string(ModeKind kind);
ModeKind mode_kind_from_string(const std::string& s);

}  // namespace txlab
