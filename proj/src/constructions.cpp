#include "antipodal/constructions.hpp"

#include <cmath>
#include <filesystem>

#include "antipodal/config_io.hpp"
#include "antipodal/errors.hpp"

#ifndef ANTIPODAL_DATA_DIR
#define ANTIPODAL_DATA_DIR "data"
#endif

namespace antipodal {

AntipodalConfig cross_polytope_config(int d) {
  if (d < 2) throw InvalidArgument("cross polytope needs d >= 2");
  PointSet base;
  for (int i = 0; i < d; ++i) base.push_back(UnitVector::axis(d, i));
  AntipodalConfig c(d, std::move(base), "constructed:cross-polytope");
  c.set_covering_radius(std::acos(std::sqrt(1.0 / d)));
  return c;
}

AntipodalConfig regular_polygon_config(int k) {
  if (k < 4 || k % 2 != 0) throw InvalidArgument("regular polygon config needs even k >= 4 to be antipodal");
  PointSet base;
  for (int j = 0; j < k / 2; ++j) {
    const double t = 2.0 * kPi * j / k;
    base.push_back(UnitVector{std::cos(t), std::sin(t)});
  }
  AntipodalConfig c(2, std::move(base), "constructed:polygon-" + std::to_string(k));
  c.set_covering_radius(kPi / k);
  return c;
}

AntipodalConfig hexagon_pair_config() {
  auto c = orthogonal_join(regular_polygon_config(6), regular_polygon_config(6));
  c.set_provenance("constructed:hexagon-pair");
  return c;
}

AntipodalConfig orthogonal_join(const AntipodalConfig& left, const AntipodalConfig& right) {
  const int d = left.dim() + right.dim();
  PointSet base;
  for (const auto& p : left.base_points()) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    v.head(left.dim()) = p.vec();
    base.emplace_back(v);
  }
  for (const auto& p : right.base_points()) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    v.tail(right.dim()) = p.vec();
    base.emplace_back(v);
  }
  AntipodalConfig c(d, std::move(base), "constructed:join");
  if (left.covering_radius() && right.covering_radius() && *left.covering_radius() < kPi / 2 &&
      *right.covering_radius() < kPi / 2) {
    c.set_covering_radius(join_covering_radius(*left.covering_radius(), *right.covering_radius()));
  }
  return c;
}

double join_covering_radius(double r_left, double r_right) {
  if (!(r_left > 0.0 && r_left < kPi / 2) || !(r_right > 0.0 && r_right < kPi / 2))
    throw InvalidArgument("join_covering_radius: factor radii must lie in (0, pi/2)");
  const double a = std::cos(r_left), b = std::cos(r_right);
  return std::acos(a * b / std::hypot(a, b));
}

std::string shipped_config_path(const std::string& name) {
  return (std::filesystem::path(ANTIPODAL_DATA_DIR) / (name + ".json")).string();
}

AntipodalConfig shipped_config(const std::string& name) {
  const auto path = shipped_config_path(name);
  if (!std::filesystem::exists(path)) throw InvalidArgument("no shipped configuration named '" + name + "'");
  return load_config(path).config;
}

}  // namespace antipodal
