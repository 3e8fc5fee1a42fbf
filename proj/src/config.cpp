#include "txlab/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "txlab/constants.hpp"
#include "txlab/errors.hpp"

namespace txlab {

namespace {

using nlohmann::json;

double number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw ConfigError(where + ": missing key \"" + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(where + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

}  // namespace

LoadedConfig parse_config(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be a JSON object");
    for (const char* key : {"modes", "couplings", "pump", "environment"})
        if (!doc.contains(key))
            throw ConfigError(origin + ": missing top-level key \"" + key + "\"");

    const json& jmodes = doc.at("modes");
    if (!jmodes.is_array() || jmodes.empty())
        throw ConfigError(origin + ": \"modes\" must be a nonempty array");
    std::vector<ModeSpec> modes;
    modes.reserve(jmodes.size());
    for (std::size_t i = 0; i < jmodes.size(); ++i) {
        const std::string where = origin + ": modes[" + std::to_string(i) + "]";
        const json& jm = jmodes.at(i);
        if (!jm.is_object()) throw ConfigError(where + " must be an object");
        ModeSpec m;
        if (!jm.contains("label") || !jm.at("label").is_string())
            throw ConfigError(where + ": missing string \"label\"");
        try {
            m.label = mode_kind_from_string(jm.at("label").get<std::string>());
        } catch (const ParseError& e) {
            throw ConfigError(where + ": " + e.what());
        }
        m.omega = two_pi * number(jm, "frequency_hz", where);
        m.kappa_int = two_pi * number(jm, "kappa_int_hz", where);
        m.kappa_ext = two_pi * number(jm, "kappa_ext_hz", where);
        m.bath_temperature_k = number(jm, "bath_temperature_k", where);
        modes.push_back(m);
    }

    const json& jcouplings = doc.at("couplings");
    if (!jcouplings.is_array())
        throw ConfigError(origin + ": \"couplings\" must be an array");
    std::vector<CouplingSpec> couplings;
    couplings.reserve(jcouplings.size());
    for (std::size_t i = 0; i < jcouplings.size(); ++i) {
        const std::string where = origin + ": couplings[" + std::to_string(i) + "]";
        const json& jc = jcouplings.at(i);
        if (!jc.is_object()) throw ConfigError(where + " must be an object");
        CouplingSpec c;
        const double a = number(jc, "a", where);
        const double b = number(jc, "b", where);
        if (a < 0 || b < 0 || a != static_cast<std::size_t>(a) || b != static_cast<std::size_t>(b))
            throw ConfigError(where + ": \"a\" and \"b\" must be nonnegative mode indices");
        c.mode_a = static_cast<std::size_t>(a);
        c.mode_b = static_cast<std::size_t>(b);
        c.strength = two_pi * number(jc, "strength_hz", where);
        couplings.push_back(c);
    }

    const json& jpump = doc.at("pump");
    if (!jpump.is_object()) throw ConfigError(origin + ": \"pump\" must be an object");
    const bool has_freq = jpump.contains("frequency_hz");
    const bool has_det = jpump.contains("detuning_hz");
    if (has_freq == has_det)
        throw ConfigError(origin +
                          ": pump needs exactly one of \"frequency_hz\" or \"detuning_hz\"");
    PumpSpec pump;
    const double omega_o = modes.back().omega;
    if (has_freq) {
        pump.pump_frequency = two_pi * number(jpump, "frequency_hz", origin + ": pump");
        pump.detuning = pump.pump_frequency - omega_o;
    } else {
        pump.detuning = two_pi * number(jpump, "detuning_hz", origin + ": pump");
        pump.pump_frequency = omega_o + pump.detuning;
    }

    const json& jenv = doc.at("environment");
    if (!jenv.is_object()) throw ConfigError(origin + ": \"environment\" must be an object");
    NoiseEnvironment env;
    env.waveguide_temperature_k = number(jenv, "waveguide_temperature_k", origin + ": environment");
    if (env.waveguide_temperature_k < 0.0)
        throw ConfigError(origin + ": waveguide temperature must be nonnegative");
    if (jenv.contains("optical_occupancy_forced_zero")) {
        if (!jenv.at("optical_occupancy_forced_zero").is_boolean())
            throw ConfigError(origin + ": \"optical_occupancy_forced_zero\" must be a boolean");
        env.optical_occupancy_forced_zero = jenv.at("optical_occupancy_forced_zero").get<bool>();
    }

    return {build_chain(std::move(modes), std::move(couplings), pump), env};
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

}  // namespace txlab
