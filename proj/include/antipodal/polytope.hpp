#pragma once

// Polytopes given by vertices: normal cones, verification of X-ray line
// sets, a search for small X-ray line sets, and the pairwise vertex tests
// behind weak neighbourliness and antipodality.
//
// Line verification checks vertex cones only. The normal cone of any face is
// spanned by a subset of the generators of each of its vertices' cones, so a
// line whose orthogonal hyperplane misses a vertex cone also misses the cone
// of every face through that vertex.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "antipodal/hull.hpp"
#include "antipodal/sphere.hpp"

namespace antipodal {

class Polytope {
 public:
  // Throws DegenerateInput if the vertices do not span E^d and
  // InvalidArgument if some point is not a vertex of the hull.
  explicit Polytope(std::vector<Eigen::VectorXd> vertices);

  int dim() const { return hull_.dim(); }
  std::size_t vertex_count() const { return hull_.points().size(); }
  const std::vector<Eigen::VectorXd>& vertices() const { return hull_.points(); }
  // Facets with their full vertex sets and outward unit normals.
  const std::vector<FacetPlane>& facets() const { return hull_.planes(); }
  // Facet indices through each vertex.
  const std::vector<std::size_t>& vertex_facets(std::size_t v) const { return incidence_.at(v); }

 private:
  ConvexHull hull_;
  std::vector<std::vector<std::size_t>> incidence_;
};

struct NormalCone {
  std::vector<std::size_t> face;  // sorted vertex indices
  std::vector<UnitVector> generators;
};

// Throws InvalidArgument unless `face` is exactly the vertex set of a face.
NormalCone normal_cone(const Polytope& p, std::vector<std::size_t> face);

// Directions of lines through the origin, without parallel duplicates.
class LineSet {
 public:
  LineSet() = default;
  explicit LineSet(const std::vector<UnitVector>& directions);

  // False (and no change) if the line is parallel to one already present.
  bool add(const UnitVector& direction);
  const std::vector<UnitVector>& directions() const { return dirs_; }
  std::size_t size() const { return dirs_.size(); }

 private:
  std::vector<UnitVector> dirs_;
};

inline constexpr double kStrictTolerance = 1e-10;
inline constexpr double kMarginalTolerance = 1e-8;

// True iff every generator has inner product > 1e-10 with the direction, or
// every one has < -1e-10, i.e. the orthogonal hyperplane misses the cone.
bool line_xrays_face(const NormalCone& cone, const UnitVector& direction);

struct XrayReport {
  bool ok = false;
  std::vector<std::size_t> uncovered;  // vertices X-rayed by no line
  // Vertices where some line has |<n, l>| < 1e-8 against a cone generator:
  // a small perturbation of the lines may change the verdict there.
  std::vector<std::size_t> marginal;
  std::vector<int> covering_line;  // per vertex, first line that X-rays it or -1
};

XrayReport verify_xray_lines(const Polytope& p, const LineSet& lines);

struct XraySearchResult {
  std::size_t count = 0;
  LineSet lines;
  XrayReport report;
  std::size_t pool_size = 0;    // candidates generated
  std::size_t pruned_size = 0;  // after removing dominated candidates
  bool exact = false;           // minimum over the pool was proven
};

// Candidate pool: facet normals, vertex directions, the centers of the
// smallest caps around vertex Gauss images and `random_candidates` seeded
// random directions. Exact set cover when at most 20 candidates survive
// pruning, greedy otherwise. Throws Error if the pool cannot cover.
XraySearchResult xray_upper_bound(const Polytope& p, std::size_t random_candidates = 256, std::uint64_t seed = 1);

// Distinct parallel supporting hyperplanes through u and v exist.
bool is_antipodal_pair(const Polytope& p, std::size_t u, std::size_t v);
// Some facet contains both vertices.
bool on_common_face(const Polytope& p, std::size_t u, std::size_t v);

struct WnaReport {
  bool weakly_neighbourly = false;
  bool antipodal = false;
  std::size_t vertex_count = 0;
  int dim = 0;
  double conjecture_bound = 0.0;       // 3 * 2^(d-2)
  double danzer_grunbaum_bound = 0.0;  // 2^d
  std::optional<std::size_t> xray_lower_bound;  // v, when both tests pass
  bool conjecture_violation = false;  // WNA, antipodal and v > 3 * 2^(d-2)
  std::optional<std::pair<std::size_t, std::size_t>> non_neighbourly_pair;
  std::optional<std::pair<std::size_t, std::size_t>> non_antipodal_pair;
};

WnaReport wna_check(const Polytope& p);

// Test polytopes.
Polytope cube_polytope(int d);                 // [-1, 1]^d
Polytope cross_polytope(int d);                // {±e_i}
Polytope regular_simplex(int d);               // d+1 vertices
Polytope regular_polygon(int k);               // k-gon on the unit circle
Polytope cube_minus_face_polytope(int d);      // cube vertices off one (d-2)-face
Polytope polytope_from_points(const std::vector<UnitVector>& points);

nlohmann::json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const nlohmann::json& j);
Polytope load_polytope(const std::string& path);

// {"dim": d, "lines": [[...], ...]}
nlohmann::json lines_to_json(const LineSet& lines);
LineSet lines_from_json(const nlohmann::json& j);

nlohmann::json xray_report_to_json(const XrayReport& r);
nlohmann::json wna_report_to_json(const WnaReport& r);

}  // namespace antipodal
