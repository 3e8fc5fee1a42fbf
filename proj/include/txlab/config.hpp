#pragma once

#include <string>

#include "txlab/model.hpp"

namespace txlab {

struct LoadedConfig {
    ChainModel model;
    NoiseEnvironment environment;
};

// Reads a model description from JSON. File-level frequencies and rates are
// ordinary frequencies in Hz; this loader is where the 2*pi conversion to
// angular units happens. The pump takes either {"frequency_hz"} or
// {"detuning_hz"}, not both.
LoadedConfig load_config(const std::string& path);
LoadedConfig parse_config(const std::string& json_text, const std::string& origin = "<string>");

}  // namespace txlab
