#include "txlab/model.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "txlab/errors.hpp"

namespace txlab {

namespace {

std::string mode_name(const ModeSpec& m, std::size_t index) {
    return std::string(to_string(m.label)) + " mode (index " + std::to_string(index) + ")";
}

void validate_mode(const ModeSpec& m, std::size_t index) {
    const std::string who = mode_name(m, index);
    if (m.kappa_int < 0.0)
        throw ValidationError(who + ": intrinsic loss kappa_int must be nonnegative");
    if (m.kappa_ext < 0.0)
        throw ValidationError(who + ": external coupling kappa_ext must be nonnegative");
    if (!(m.kappa() > 0.0))
        throw ValidationError(who + ": total loss kappa_int + kappa_ext must be positive");
    if (!(m.omega > 0.0))
        throw ValidationError(who + ": resonance frequency omega must be positive");
    if (m.bath_temperature_k < 0.0)
        throw ValidationError(who + ": bath temperature must be nonnegative");
}

}  // namespace

double ChainModel::effective_frequency(std::size_t mu) const {
    if (mu + 1 == modes.size()) return -pump.detuning;
    return modes[mu].omega;
}

bool ChainModel::has_port(std::size_t mode, PortClass kind) const {
    for (const Port& p : ports)
        if (p.mode == mode && p.kind == kind) return true;
    return false;
}

std::size_t ChainModel::port_index(std::size_t mode, PortClass kind) const {
    for (std::size_t i = 0; i < ports.size(); ++i)
        if (ports[i].mode == mode && ports[i].kind == kind) return i;
    throw Error("no " + std::string(kind == PortClass::itinerant ? "itinerant" : "bath") +
                " port on mode " + std::to_string(mode));
}

double ChainModel::coupling_between(std::size_t a, std::size_t b) const {
    for (const CouplingSpec& c : couplings)
        if ((c.mode_a == a && c.mode_b == b) || (c.mode_a == b && c.mode_b == a))
            return c.strength;
    return 0.0;
}

ChainModel build_chain(std::vector<ModeSpec> modes, std::vector<CouplingSpec> couplings,
                       PumpSpec pump) {
    const std::size_t n = modes.size();
    if (n < 2) throw ConfigError("chain needs at least two modes");
    for (std::size_t i = 0; i < n; ++i) validate_mode(modes[i], i);

    if (!(pump.detuning < 0.0))
        throw ValidationError("pump must be red-detuned: detuning = " +
                              std::to_string(pump.detuning) + " rad/s is not negative");

    // Couplings must cover each adjacent pair exactly once, in any order and
    // orientation. Normalize to (i, i+1).
    if (couplings.size() != n - 1)
        throw ConfigError("chain of " + std::to_string(n) + " modes needs exactly " +
                          std::to_string(n - 1) + " couplings, got " +
                          std::to_string(couplings.size()));
    std::vector<CouplingSpec> normalized(n - 1);
    std::vector<bool> seen(n - 1, false);
    for (CouplingSpec c : couplings) {
        if (c.mode_a >= n || c.mode_b >= n)
            throw ConfigError("coupling references mode index out of range");
        if (c.mode_a == c.mode_b)
            throw ConfigError("coupling links mode " + std::to_string(c.mode_a) + " to itself");
        if (c.strength < 0.0)
            throw ValidationError("coupling strength must be nonnegative");
        if (c.mode_a > c.mode_b) std::swap(c.mode_a, c.mode_b);
        if (c.mode_b != c.mode_a + 1 || seen[c.mode_a])
            throw ConfigError("couplings must form a simple path over the ordered modes");
        seen[c.mode_a] = true;
        normalized[c.mode_a] = c;
    }

    if (!(modes.front().kappa_ext > 0.0))
        throw ConfigError("first mode needs an itinerant port (kappa_ext > 0)");
    if (!(modes.back().kappa_ext > 0.0))
        throw ConfigError("last mode needs an itinerant port (kappa_ext > 0)");

    ChainModel model;
    model.modes = std::move(modes);
    model.couplings = std::move(normalized);
    model.pump = pump;

    for (std::size_t i = 0; i < n; ++i) {
        const bool endpoint = (i == 0 || i + 1 == n);
        if (endpoint && model.modes[i].kappa_ext > 0.0)
            model.ports.push_back({i, PortClass::itinerant, model.modes[i].kappa_ext});
        if (model.modes[i].kappa_int > 0.0)
            model.ports.push_back({i, PortClass::bath, model.modes[i].kappa_int});
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (model.modes[i].kappa_ext > 0.0)
            model.ports.push_back({i, PortClass::itinerant, model.modes[i].kappa_ext});

    return model;
}

ChainModel build_one_stage(const ModeSpec& e, const ModeSpec& m, const ModeSpec& o,
                           double g, double zeta, PumpSpec pump) {
    if (m.kappa_ext != 0.0)
        throw ConfigError("intermediate mode may not have an itinerant port (kappa_ext must be 0)");
    return build_chain({e, m, o}, {{0, 1, g}, {1, 2, zeta}}, pump);
}

ChainModel build_zero_stage(const ModeSpec& e, const ModeSpec& o, double g_eo, PumpSpec pump) {
    return build_chain({e, o}, {{0, 1, g_eo}}, pump);
}

const char* to_string(ModeKind kind) {
    switch (kind) {
        case ModeKind::microwave: return "microwave";
        case ModeKind::intermediate: return "intermediate";
        case ModeKind::optical: return "optical";
        case ModeKind::custom: return "custom";
    }
    return "custom";
}

ModeKind mode_kind_from_string(const std::string& s) {
    if (s == "microwave") return ModeKind::microwave;
    if (s == "intermediate") return ModeKind::intermediate;
    if (s == "optical") return ModeKind::optical;
    if (s == "custom") return ModeKind::custom;
    throw ParseError("unknown mode label \"" + s +
                     "\" (expected microwave, intermediate, optical, or custom)");
}

}  // namespace txlab
