#include "antipodal/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>

#include "antipodal/errors.hpp"

namespace antipodal {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return hash_hex(fnv1a64(bytes));
}

std::string json_hash(const nlohmann::json& j) { return hash_hex(fnv1a64(j.dump())); }

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["arguments"] = arguments;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json();
  j["tolerance_overrides"] = tolerance_overrides;
  j["toolkit_version"] = toolkit_version;
  j["input_hashes"] = input_hashes;
  j["output_paths"] = output_paths;
  return j;
}

}  // namespace antipodal
