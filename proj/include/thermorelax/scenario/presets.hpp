// Built-in scenarios, stored as config text so they exercise the parser.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace thermorelax::scenario {

struct Preset {
  std::string name;
  std::string description;
  std::string config_text;
};

const std::vector<Preset>& presets();

/// Throws std::invalid_argument naming the known presets.
const Preset& find_preset(std::string_view name);

}  // namespace thermorelax::scenario
