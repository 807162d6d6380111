#pragma once

// Provenance record embedded in every JSON artifact. Contains no clock or
// host data, so identical invocations produce identical bytes.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace antipodal {

inline constexpr const char* kToolkitVersion = "0.1.0";

std::uint64_t fnv1a64(std::string_view bytes);
// 16 lowercase hex digits.
std::string hash_hex(std::uint64_t h);
// FNV-1a of a file's bytes; throws FormatError if unreadable.
std::string file_hash(const std::string& path);
// FNV-1a of the compact serialization.
std::string json_hash(const nlohmann::json& j);

struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> tolerance_overrides;
  std::string toolkit_version = kToolkitVersion;
  std::map<std::string, std::string> input_hashes;  // path -> hash
  std::vector<std::string> output_paths;

  nlohmann::json to_json() const;
};

}  // namespace antipodal
