#pragma once

// Facet enumeration for the convex hull of a finite point set in E^d,
// 2 <= d <= 12.
//
// Facets are found by gift wrapping: starting from one supporting hyperplane,
// each ridge of a known facet is rotated about until it meets the next point.
// Ridges of a non-simplicial facet come from a recursive hull computation
// inside the facet's hyperplane, so coplanar point groups (cube faces, the
// product-like configurations of orthogonal joins) are recognized directly
// from the input data instead of being perturbed apart.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "antipodal/sphere.hpp"

namespace antipodal {

// One geometric facet: every input point on the supporting hyperplane.
struct FacetPlane {
  std::vector<std::size_t> points;  // sorted
  Eigen::VectorXd normal;           // unit, outward
  double offset = 0.0;              // <normal, p> for p on the facet
};

// A simplicial piece of the hull boundary. Non-simplicial facets are split
// into several pieces that share a plane and carry triangulated = true.
struct HullFacet {
  std::vector<std::size_t> vertex_indices;  // exactly d entries
  UnitVector outward_normal;
  double support_offset;  // > 0 when the origin is on the inner side
  std::size_t plane = 0;  // index into ConvexHull::planes()
  bool triangulated = false;
};

class ConvexHull {
 public:
  // rel_tol scales with the spread of the input. Throws DegenerateInput
  // (carrying the detected affine dimension) for flat input.
  explicit ConvexHull(std::vector<Eigen::VectorXd> points, double rel_tol = 1e-9);
  explicit ConvexHull(std::span<const UnitVector> points, double rel_tol = 1e-9);

  int dim() const { return dim_; }
  double tolerance() const { return tol_; }
  const std::vector<Eigen::VectorXd>& points() const { return points_; }
  const std::vector<FacetPlane>& planes() const { return planes_; }

  bool is_simplicial() const;
  // Indices of input points that are vertices of the hull.
  std::vector<std::size_t> vertices() const;
  std::vector<HullFacet> facets() const;

  // Smallest facet offset, i.e. the inradius about the origin when positive.
  double min_offset() const;

 private:
  int dim_ = 0;
  double tol_ = 0.0;
  std::vector<Eigen::VectorXd> points_;
  std::vector<FacetPlane> planes_;
};

std::vector<HullFacet> convex_hull_facets(std::span<const Eigen::VectorXd> points);
std::vector<HullFacet> convex_hull_facets(std::span<const UnitVector> points);

// True iff the origin lies strictly inside (every offset > tol).
bool contains_origin_interior(std::span<const HullFacet> facets, double tol = 1e-10);

int affine_dimension(std::span<const Eigen::VectorXd> points, double abs_tol);

}  // namespace antipodal
