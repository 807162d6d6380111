#pragma once

// Floating-point primitives on the unit sphere S^(d-1): geodesic distance,
// spherical caps, circumcenters and smallest enclosing caps.

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace antipodal {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg(double rad) { return rad * 180.0 / kPi; }
inline constexpr double rad(double degrees) { return degrees * kPi / 180.0; }

// A point of S^(d-1), d >= 2. Construction normalizes.
class UnitVector {
 public:
  explicit UnitVector(const Eigen::VectorXd& v);
  UnitVector(std::initializer_list<double> coords);

  // Basis vector e_axis of E^dim.
  static UnitVector axis(int dim, int axis);

  int dim() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[i]; }
  const Eigen::VectorXd& vec() const { return v_; }
  double dot(const UnitVector& o) const { return v_.dot(o.v_); }
  UnitVector operator-() const;

 private:
  struct Trusted {};
  UnitVector(Eigen::VectorXd v, Trusted) : v_(std::move(v)) {}

  Eigen::VectorXd v_;
};

using PointSet = std::vector<UnitVector>;

struct SphericalCap {
  UnitVector center;
  double radius;  // radians, in [0, pi]

  bool contains(const UnitVector& p, double tol = 1e-12) const;
};

// Arc length between p and q, in [0, pi].
double geodesic_distance(const UnitVector& p, const UnitVector& q);

// arccos with the argument clamped to [-1, 1].
double safe_acos(double c);

struct Circumcircle {
  UnitVector center;
  double radius;
};

// Equidistant center of 2..d linearly independent points lying in an open
// hemisphere. The center lies in the linear span of the inputs, on their side.
Circumcircle circumcenter(std::span<const UnitVector> points);

struct EnclosingCap {
  SphericalCap cap;
  // Indices of input points on the cap boundary whose spherical hull
  // contains the center (optimality certificate). At most d of them.
  std::vector<std::size_t> support;
};

// Smallest cap containing all points. The points must lie in an open
// hemisphere.
EnclosingCap min_enclosing_cap(std::span<const UnitVector> points);

// True iff there is c with <c, p> > tol for every p (scaled to |c|_inf <= 1).
bool in_open_hemisphere(std::span<const UnitVector> points, double tol = 1e-10);

// Largest geodesic distance between two points of the set.
double angular_diameter(std::span<const UnitVector> points);

UnitVector random_unit_vector(int dim, std::mt19937_64& rng);

// Haar-distributed orthogonal matrix.
Eigen::MatrixXd random_orthogonal(int dim, std::mt19937_64& rng);

UnitVector rotate(const Eigen::MatrixXd& q, const UnitVector& p);
PointSet rotate(const Eigen::MatrixXd& q, std::span<const UnitVector> points);

}  // namespace antipodal
