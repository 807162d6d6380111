#pragma once

#include <random>
#include <vector>

#include "antipodal/covering.hpp"

namespace testutil {

// Random antipodal configuration with m base points.
inline antipodal::AntipodalConfig random_config(int d, std::size_t m, std::mt19937_64& rng) {
  antipodal::PointSet pts;
  for (std::size_t i = 0; i < m; ++i) pts.push_back(antipodal::random_unit_vector(d, rng));
  return antipodal::AntipodalConfig(d, pts, "random");
}

inline antipodal::PointSet rotated(const Eigen::MatrixXd& q, const antipodal::PointSet& pts) {
  return antipodal::rotate(q, pts);
}

}  // namespace testutil
