#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "antipodal/constructions.hpp"
#include "antipodal/errors.hpp"
#include "antipodal/polytope.hpp"

using namespace antipodal;

namespace {

// Independent X-ray oracles: vertex v is X-rayed along l iff v + t l or
// v - t l is an interior point for small t > 0. Interior tests below do not
// use the hull code.
bool inside_box(const Eigen::VectorXd& x) { return (x.array().abs() < 1.0 - 1e-12).all(); }

bool inside_simplex(const std::vector<Eigen::VectorXd>& verts, const Eigen::VectorXd& x) {
  const auto d = x.size();
  Eigen::MatrixXd a(d + 1, d + 1);
  Eigen::VectorXd b(d + 1);
  for (Eigen::Index j = 0; j <= d; ++j) {
    a.col(j).head(d) = verts[j];
    a(d, j) = 1.0;
  }
  b.head(d) = x;
  b[d] = 1.0;
  const Eigen::VectorXd lambda = a.fullPivLu().solve(b);
  return (lambda.array() > 1e-12).all();
}

template <class Inside>
std::vector<std::size_t> probe_xrayed(const std::vector<Eigen::VectorXd>& verts, const Eigen::VectorXd& dir,
                                      Inside inside) {
  std::vector<std::size_t> out;
  const double t = 1e-6;
  for (std::size_t v = 0; v < verts.size(); ++v) {
    if (inside(verts[v] + t * dir) || inside(verts[v] - t * dir)) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> covered_by(const Polytope& p, const UnitVector& l) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < p.vertex_count(); ++v) {
    if (line_xrays_face(normal_cone(p, {v}), l)) out.push_back(v);
  }
  return out;
}

std::size_t index_of(const Polytope& p, const Eigen::VectorXd& x) {
  for (std::size_t i = 0; i < p.vertex_count(); ++i)
    if ((p.vertices()[i] - x).norm() < 1e-12) return i;
  FAIL("vertex not found");
  return 0;
}

std::vector<UnitVector> cube_diagonals() {
  return {UnitVector{1.0, 1.0, 1.0}, UnitVector{1.0, 1.0, -1.0}, UnitVector{1.0, -1.0, 1.0},
          UnitVector{-1.0, 1.0, 1.0}};
}

Polytope hexagon_pair_polytope() { return polytope_from_points(hexagon_pair_config().expanded()); }

std::vector<Polytope> corpus() {
  std::vector<Polytope> out;
  out.push_back(regular_polygon(3));
  out.push_back(regular_polygon(4));
  out.push_back(regular_polygon(6));
  for (int d = 2; d <= 4; ++d) out.push_back(cube_polytope(d));
  for (int d = 3; d <= 4; ++d) out.push_back(cross_polytope(d));
  for (int d = 2; d <= 5; ++d) out.push_back(regular_simplex(d));
  out.push_back(cube_minus_face_polytope(3));
  out.push_back(cube_minus_face_polytope(4));
  out.push_back(hexagon_pair_polytope());
  return out;
}

}  // namespace

TEST_CASE("polytope construction") {
  CHECK(cube_polytope(3).vertex_count() == 8);
  CHECK(cube_polytope(3).facets().size() == 6);
  CHECK(cube_minus_face_polytope(3).vertex_count() == 6);
  CHECK(cube_minus_face_polytope(4).vertex_count() == 12);
  std::vector<Eigen::VectorXd> with_interior{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1),
                                             Eigen::Vector2d(0.1, 0.1)};
  CHECK_THROWS_AS(Polytope{with_interior}, InvalidArgument);
}

TEST_CASE("normal cone examples") {
  auto cube = cube_polytope(3);
  const auto v = index_of(cube, Eigen::Vector3d(1, 1, 1));
  auto cone = normal_cone(cube, {v});
  REQUIRE(cone.generators.size() == 3);
  std::vector<int> axes;
  for (const auto& g : cone.generators) {
    for (int i = 0; i < 3; ++i)
      if (std::abs(g[i] - 1.0) < 1e-12) axes.push_back(i);
  }
  std::sort(axes.begin(), axes.end());
  CHECK(axes == std::vector<int>{0, 1, 2});

  auto simplex = regular_simplex(3);
  for (const auto& f : simplex.facets()) {
    auto c = normal_cone(simplex, f.points);
    REQUIRE(c.generators.size() == 1);
    CHECK((c.generators[0].vec() - f.normal).norm() < 1e-12);
  }

  auto hp = hexagon_pair_polytope();
  for (const auto& f : hp.facets()) CHECK(normal_cone(hp, f.points).generators.size() == 1);
  for (std::size_t i = 0; i < hp.vertex_count(); ++i) CHECK(normal_cone(hp, {i}).generators.size() == 12);

  // An edge of the cube has two facet normals; a diagonal pair is no face.
  const auto w = index_of(cube, Eigen::Vector3d(1, 1, -1));
  CHECK(normal_cone(cube, {v, w}).generators.size() == 2);
  CHECK_THROWS_AS(normal_cone(cube, {v, index_of(cube, Eigen::Vector3d(-1, -1, -1))}), InvalidArgument);
  CHECK_THROWS_AS(normal_cone(cube, {}), InvalidArgument);
}

TEST_CASE("line_xrays_face examples") {
  auto cube = cube_polytope(3);
  auto cone = normal_cone(cube, {index_of(cube, Eigen::Vector3d(1, 1, 1))});
  CHECK(line_xrays_face(cone, UnitVector{1.0, 1.0, 1.0}));
  CHECK_FALSE(line_xrays_face(cone, UnitVector::axis(3, 0)));
  for (const auto& f : cube.facets()) CHECK(line_xrays_face(normal_cone(cube, f.points), UnitVector(f.normal)));
}

TEST_CASE("cube diagonals") {
  auto cube = cube_polytope(3);
  const auto diag = cube_diagonals();
  auto report = verify_xray_lines(cube, LineSet(diag));
  CHECK(report.ok);
  CHECK(report.uncovered.empty());
  CHECK(report.marginal.empty());
  for (std::size_t skip = 0; skip < 4; ++skip) {
    std::vector<UnitVector> three;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != skip) three.push_back(diag[i]);
    auto r = verify_xray_lines(cube, LineSet(three));
    CHECK_FALSE(r.ok);
    CHECK(r.uncovered.size() == 2);
  }
}

TEST_CASE("cube against the sign pattern and probe oracles") {
  auto cube = cube_polytope(3);
  std::mt19937_64 rng(71);
  for (int t = 0; t < 500; ++t) {
    const auto l = random_unit_vector(3, rng);
    // Sign pattern oracle: exactly the vertices +-sign(l).
    std::vector<std::size_t> expected{index_of(cube, l.vec().array().sign().matrix()),
                                      index_of(cube, (-l.vec()).array().sign().matrix())};
    std::sort(expected.begin(), expected.end());
    CHECK(covered_by(cube, l) == expected);
    CHECK(probe_xrayed(cube.vertices(), l.vec(), inside_box) == expected);
  }
  // Lines in a coordinate plane X-ray nothing.
  CHECK(covered_by(cube, UnitVector{1.0, 2.0, 0.0}).empty());
  CHECK(probe_xrayed(cube.vertices(), Eigen::Vector3d(1, 2, 0).normalized(), inside_box).empty());

  auto search = xray_upper_bound(cube);
  CHECK(search.count == 4);
  CHECK(search.report.ok);
}

TEST_CASE("triangle needs three lines") {
  auto tri = regular_polygon(3);
  // Angular window oracle: no direction X-rays two vertices.
  for (int i = 0; i < 3600; ++i) {
    const double a = kPi * (i + 0.5) / 3600;
    const Eigen::Vector2d dir(std::cos(a), std::sin(a));
    const auto probed = probe_xrayed(tri.vertices(), dir, [&](const Eigen::VectorXd& x) {
      return inside_simplex(tri.vertices(), x);
    });
    CHECK(probed.size() <= 1);
    CHECK(covered_by(tri, UnitVector(Eigen::VectorXd(dir))) == probed);
  }
  auto search = xray_upper_bound(tri);
  CHECK(search.count == 3);
  CHECK(search.report.ok);
}

TEST_CASE("regular simplices need d + 1 lines") {
  std::mt19937_64 rng(72);
  for (int d = 2; d <= 5; ++d) {
    auto s = regular_simplex(d);
    for (int t = 0; t < 300; ++t) {
      const auto l = random_unit_vector(d, rng);
      const auto probed = probe_xrayed(s.vertices(), l.vec(), [&](const Eigen::VectorXd& x) {
        return inside_simplex(s.vertices(), x);
      });
      CHECK(probed.size() <= 1);
      CHECK(covered_by(s, l) == probed);
    }
    // The line through a vertex and the centroid X-rays that vertex.
    std::vector<UnitVector> lines;
    for (const auto& v : s.vertices()) lines.emplace_back(v + 1e-3 * random_unit_vector(d, rng).vec());
    CHECK(verify_xray_lines(s, LineSet(lines)).ok);
    lines.pop_back();
    CHECK_FALSE(verify_xray_lines(s, LineSet(lines)).ok);

    // Perturbed facet normals: d + 1 verify, d do not.
    std::vector<UnitVector> normals;
    for (const auto& f : s.facets()) normals.emplace_back(f.normal + 1e-3 * random_unit_vector(d, rng).vec());
    CHECK(verify_xray_lines(s, LineSet(normals)).ok);
    normals.pop_back();
    CHECK_FALSE(verify_xray_lines(s, LineSet(normals)).ok);

    CHECK(xray_upper_bound(s).count == static_cast<std::size_t>(d + 1));
  }
}

TEST_CASE("search results on the corpus") {
  for (const auto& p : corpus()) {
    auto r = xray_upper_bound(p);
    CHECK(r.report.ok);
    CHECK(r.count >= static_cast<std::size_t>(p.dim()));
    CHECK(r.count == r.lines.size());
    CHECK(verify_xray_lines(p, r.lines).ok);
  }
  CHECK(xray_upper_bound(cube_polytope(4)).count == 8);
  CHECK(xray_upper_bound(cube_minus_face_polytope(3)).count == 6);
}

TEST_CASE("antipodal pairs") {
  auto cube = cube_polytope(3);
  for (std::size_t u = 0; u < 8; ++u)
    for (std::size_t v = 0; v < 8; ++v)
      if (u != v) CHECK(is_antipodal_pair(cube, u, v));
  auto simplex = regular_simplex(4);
  for (std::size_t u = 0; u < 5; ++u)
    for (std::size_t v = u + 1; v < 5; ++v) CHECK(is_antipodal_pair(simplex, u, v));
  CHECK_THROWS_AS(is_antipodal_pair(cube, 2, 2), InvalidArgument);
}

TEST_CASE("antipodal pairs of the hexagon") {
  auto hex = regular_polygon(6);
  const auto& v = hex.vertices();
  // Adjacent vertices: no parallel supporting lines through both.
  CHECK_FALSE(is_antipodal_pair(hex, 0, 1));
  // Vertices 120 degrees apart: the two lines orthogonal to c below support
  // the hexagon along opposite edges, one through each vertex.
  const Eigen::Vector2d mid = (v[0] - v[2]).normalized();
  double hi = -1e9, lo = 1e9;
  for (const auto& x : v) hi = std::max(hi, mid.dot(x)), lo = std::min(lo, mid.dot(x));
  CHECK(mid.dot(v[0]) == doctest::Approx(hi));
  CHECK(mid.dot(v[2]) == doctest::Approx(lo));
  CHECK(is_antipodal_pair(hex, 0, 2));
  CHECK(is_antipodal_pair(hex, 0, 3));
}

TEST_CASE("common faces") {
  auto cube = cube_polytope(3);
  const auto a = index_of(cube, Eigen::Vector3d(1, 1, 1));
  CHECK(on_common_face(cube, a, index_of(cube, Eigen::Vector3d(1, 1, -1))));
  CHECK_FALSE(on_common_face(cube, a, index_of(cube, Eigen::Vector3d(-1, -1, -1))));
  auto simplex = regular_simplex(3);
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = u + 1; v < 4; ++v) CHECK(on_common_face(simplex, u, v));
  auto cross = cross_polytope(3);
  const auto e1 = index_of(cross, Eigen::Vector3d(1, 0, 0));
  CHECK(on_common_face(cross, e1, index_of(cross, Eigen::Vector3d(0, 1, 0))));
  CHECK_FALSE(on_common_face(cross, e1, index_of(cross, Eigen::Vector3d(-1, 0, 0))));
  CHECK_THROWS_AS(on_common_face(cross, 1, 1), InvalidArgument);
}

TEST_CASE("weak neighbourliness checks") {
  auto tri = wna_check(regular_polygon(3));
  CHECK(tri.weakly_neighbourly);
  CHECK(tri.antipodal);
  CHECK(tri.vertex_count == 3);
  CHECK(tri.conjecture_bound == 3.0);
  REQUIRE(tri.xray_lower_bound.has_value());
  CHECK(*tri.xray_lower_bound == 3);
  CHECK_FALSE(tri.conjecture_violation);

  auto cube = wna_check(cube_polytope(3));
  CHECK(cube.antipodal);
  CHECK_FALSE(cube.weakly_neighbourly);
  CHECK_FALSE(cube.xray_lower_bound.has_value());
  CHECK(cube.non_neighbourly_pair.has_value());

  auto cross = wna_check(cross_polytope(3));
  CHECK(cross.antipodal);
  CHECK_FALSE(cross.weakly_neighbourly);

  for (int d = 3; d <= 4; ++d) {
    auto cmf = wna_check(cube_minus_face_polytope(d));
    CHECK(cmf.weakly_neighbourly);
    CHECK(cmf.antipodal);
    REQUIRE(cmf.xray_lower_bound.has_value());
    CHECK(static_cast<double>(*cmf.xray_lower_bound) == cmf.conjecture_bound);
    CHECK_FALSE(cmf.conjecture_violation);
  }
}

TEST_CASE("corpus bounds") {
  for (const auto& p : corpus()) {
    auto r = wna_check(p);
    CHECK(r.danzer_grunbaum_bound == std::pow(2.0, p.dim()));
    if (r.antipodal) CHECK(static_cast<double>(r.vertex_count) <= r.danzer_grunbaum_bound);
    CHECK_FALSE(r.conjecture_violation);
    if (r.xray_lower_bound) CHECK(static_cast<double>(*r.xray_lower_bound) <= r.conjecture_bound);
  }
}

TEST_CASE("lines are unoriented and verification is monotone") {
  std::mt19937_64 rng(73);
  for (const auto& p : corpus()) {
    for (int t = 0; t < 20; ++t) {
      const auto l = random_unit_vector(p.dim(), rng);
      for (std::size_t v = 0; v < p.vertex_count(); ++v) {
        auto cone = normal_cone(p, {v});
        CHECK(line_xrays_face(cone, l) == line_xrays_face(cone, -l));
      }
    }
    auto lines = xray_upper_bound(p).lines;
    for (int t = 0; t < 5; ++t) {
      lines.add(random_unit_vector(p.dim(), rng));
      CHECK(verify_xray_lines(p, lines).ok);
    }
  }
}

TEST_CASE("verified line sets survive small rotations") {
  std::mt19937_64 rng(74);
  for (const auto& p : corpus()) {
    auto found = xray_upper_bound(p);
    REQUIRE(found.report.marginal.empty());
    for (int t = 0; t < 10; ++t) {
      // Cayley transform of a random skew matrix of norm 1e-6.
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p.dim(), p.dim());
      for (int i = 0; i < p.dim(); ++i)
        for (int j = 0; j < i; ++j) {
          a(i, j) = std::normal_distribution<double>()(rng);
          a(j, i) = -a(i, j);
        }
      a *= 1e-6 / a.norm();
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(p.dim(), p.dim());
      const Eigen::MatrixXd q = (id - a / 2).inverse() * (id + a / 2);
      REQUIRE((q - id).norm() < 2e-6);
      std::vector<UnitVector> moved;
      for (const auto& l : found.lines.directions()) moved.push_back(rotate(q, l));
      CHECK(verify_xray_lines(p, LineSet(moved)).ok);
    }
  }
}

TEST_CASE("line sets drop parallel duplicates") {
  LineSet s;
  CHECK(s.add(UnitVector{1.0, 1.0}));
  CHECK_FALSE(s.add(UnitVector{-1.0, -1.0}));
  CHECK_FALSE(s.add(UnitVector{1.0, 1.0 + 1e-12}));
  CHECK(s.add(UnitVector{1.0, 0.0}));
  CHECK(s.size() == 2);
}

TEST_CASE("JSON round trips") {
  auto cube = cube_polytope(3);
  auto back = polytope_from_json(polytope_to_json(cube));
  CHECK(back.vertex_count() == 8);
  auto lines = LineSet(cube_diagonals());
  auto lb = lines_from_json(lines_to_json(lines));
  REQUIRE(lb.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK((lb.directions()[i].vec() - lines.directions()[i].vec()).norm() < 1e-15);
  CHECK_THROWS_AS(lines_from_json(nlohmann::json{{"dim", 3}, {"lines", {{1, 0}}}}), DimensionMismatch);
}
