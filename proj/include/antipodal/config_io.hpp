#pragma once

// JSON persistence for antipodal configurations:
//   {"dim": int, "antipodal": true, "base_points": [[...], ...],
//    "covering_radius_rad": number|null, "provenance": string}
// A file may list the full point set under "points" instead of
// "base_points"; it is then split into pairs on load.

#include <string>
#include <vector>

#include "json.hpp"

#include "antipodal/covering.hpp"

namespace antipodal {

struct LoadedConfig {
  AntipodalConfig config;
  std::vector<std::string> warnings;
};

nlohmann::json config_to_json(const AntipodalConfig& config);
LoadedConfig config_from_json(const nlohmann::json& j);

LoadedConfig load_config(const std::string& path);
// Writes config_to_json(config), merged with `extra` (e.g. a run manifest).
void save_config(const AntipodalConfig& config, const std::string& path,
                 const nlohmann::json& extra = nlohmann::json::object());

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace antipodal
