#pragma once

#include <string>

#include "fmgame/types.hpp"

namespace fmgame {

// Flat key=value text, one pair per line, '#' starts a comment. All seven
// parameter keys (theta, c, w_high, w_low, eta_cap, k, s) are required;
// unknown and repeated keys are rejected. Throws ConfigError.
ModelParams parse_config(const std::string& text, const std::string& source = "<config>");

// Throws IoError when the file cannot be read, ConfigError when it cannot be
// parsed. Does not validate the parameters.
ModelParams load_config(const std::string& path);

// Sets one parameter by key. Throws ConfigError for an unknown key.
void set_param(ModelParams& params, const std::string& key, double value);
double get_param(const ModelParams& params, const std::string& key);

}  // namespace fmgame
