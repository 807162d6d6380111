#include "antipodal/config_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "antipodal/errors.hpp"

namespace antipodal {

nlohmann::json config_to_json(const AntipodalConfig& config) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : config.base_points()) {
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i < p.dim(); ++i) row.push_back(p[i]);
    pts.push_back(std::move(row));
  }
  nlohmann::json j;
  j["dim"] = config.dim();
  j["antipodal"] = true;
  j["base_points"] = std::move(pts);
  j["covering_radius_rad"] = config.covering_radius() ? nlohmann::json(*config.covering_radius()) : nlohmann::json();
  j["provenance"] = config.provenance();
  return j;
}

namespace {

std::vector<Eigen::VectorXd> read_rows(const nlohmann::json& rows, int dim, const char* key) {
  if (!rows.is_array()) throw FormatError(std::string("config: '") + key + "' must be an array");
  std::vector<Eigen::VectorXd> out;
  for (const auto& row : rows) {
    if (!row.is_array()) throw FormatError(std::string("config: entries of '") + key + "' must be arrays");
    if (static_cast<int>(row.size()) != dim)
      throw DimensionMismatch("config: point has " + std::to_string(row.size()) + " coordinates, expected " +
                              std::to_string(dim));
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) {
      if (!row[i].is_number()) throw FormatError("config: coordinates must be numbers");
      v[i] = row[i].get<double>();
    }
    out.push_back(std::move(v));
  }
  return out;
}

PointSet normalize_rows(const std::vector<Eigen::VectorXd>& rows, std::vector<std::string>& warnings) {
  PointSet out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double n = rows[i].norm();
    if (!(n > 0.0)) throw FormatError("config: point " + std::to_string(i) + " is the zero vector");
    if (std::abs(n - 1.0) > 1e-12)
      warnings.push_back("point " + std::to_string(i) + " had norm " + std::to_string(n) + "; normalized");
    out.emplace_back(rows[i]);
  }
  return out;
}

}  // namespace

LoadedConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("config: top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw FormatError("config: missing integer 'dim'");
  const int dim = j["dim"].get<int>();
  if (dim < 2) throw FormatError("config: 'dim' must be >= 2");
  const bool antipodal = j.value("antipodal", true);
  std::vector<std::string> warnings;

  PointSet base;
  if (j.contains("base_points")) {
    if (!antipodal) throw FormatError("config: 'base_points' requires \"antipodal\": true");
    base = normalize_rows(read_rows(j["base_points"], dim, "base_points"), warnings);
  } else if (j.contains("points")) {
    PointSet full = normalize_rows(read_rows(j["points"], dim, "points"), warnings);
    if (full.size() % 2 != 0) throw NotAntipodal("config: odd number of points cannot be antipodal");
    if (!verify_antipodal(full)) throw NotAntipodal("config: point set is not closed under negation");
    std::vector<bool> used(full.size(), false);
    for (std::size_t i = 0; i < full.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      for (std::size_t k = i + 1; k < full.size(); ++k) {
        if (!used[k] && (full[i].vec() + full[k].vec()).norm() <= 1e-9) {
          used[k] = true;
          break;
        }
      }
      base.push_back(full[i]);
    }
    if (2 * base.size() != full.size()) throw NotAntipodal("config: points do not split into antipodal pairs");
  } else {
    throw FormatError("config: missing 'base_points'");
  }
  if (base.empty()) throw FormatError("config: no points");

  AntipodalConfig config(dim, std::move(base), j.value("provenance", std::string("loaded")));
  if (j.contains("covering_radius_rad") && j["covering_radius_rad"].is_number())
    config.set_covering_radius(j["covering_radius_rad"].get<double>());
  return {std::move(config), std::move(warnings)};
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw FormatError("write failed for '" + path + "'");
}

LoadedConfig load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

void save_config(const AntipodalConfig& config, const std::string& path, const nlohmann::json& extra) {
  nlohmann::json j = config_to_json(config);
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  write_json_file(j, path);
}

}  // namespace antipodal
