#pragma once

// Incremental convex hull in E^3 for inner loops that only need facet planes
// (the optimizer evaluates it hundreds of thousands of times). Coplanar
// groups come out triangulated; points lying on the hull within 1e-12 are
// skipped, which leaves every facet plane unchanged.

#include <array>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace antipodal {

struct Triangle3 {
  std::array<int, 3> v;     // counterclockwise seen from outside
  Eigen::Vector3d normal;   // unit, outward
  double offset;
};

// Empty result when the points are (nearly) coplanar.
std::vector<Triangle3> hull3_triangles(const std::vector<Eigen::Vector3d>& points);

}  // namespace antipodal
