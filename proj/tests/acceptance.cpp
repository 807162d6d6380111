// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "antipodal/certify.hpp"
#include "antipodal/config_io.hpp"
#include "antipodal/constructions.hpp"
#include "antipodal/hull.hpp"
#include "antipodal/optimize.hpp"
#include "antipodal/polytope.hpp"

using namespace antipodal;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int n, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!out.ok) ++failures;
  std::printf("%s criterion %d:%s (%.2f s)\n", out.ok ? "PASS" : "FAIL", n, out.detail.str().c_str(), secs);
  std::fflush(stdout);
}

std::size_t index_of(const Polytope& p, const Eigen::VectorXd& x) {
  for (std::size_t i = 0; i < p.vertex_count(); ++i)
    if ((p.vertices()[i] - x).norm() < 1e-12) return i;
  throw std::runtime_error("vertex not found");
}

std::vector<std::size_t> covered_by(const Polytope& p, const UnitVector& l) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < p.vertex_count(); ++v)
    if (line_xrays_face(normal_cone(p, {v}), l)) out.push_back(v);
  return out;
}

// Cube [-1,1]^3 sign pattern oracle: a line with no zero coordinate X-rays
// exactly the vertices +-sign(l); otherwise none.
std::vector<std::size_t> cube_oracle(const Polytope& cube, const Eigen::Vector3d& l) {
  if ((l.array().abs() < 1e-12).any()) return {};
  std::vector<std::size_t> out{index_of(cube, l.array().sign().matrix()), index_of(cube, (-l).array().sign().matrix())};
  std::sort(out.begin(), out.end());
  return out;
}

// Triangle oracle: vertex v is X-rayed along l iff v +- t l is interior.
std::vector<std::size_t> triangle_oracle(const Polytope& tri, const Eigen::Vector2d& l) {
  const auto& v = tri.vertices();
  auto inside = [&](const Eigen::Vector2d& x) {
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector2d a = v[i], b = v[(i + 1) % 3], c = v[(i + 2) % 3];
      auto side = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& r) {
        return (q - p).x() * (r - p).y() - (q - p).y() * (r - p).x();
      };
      if (side(a, b, x) * side(a, b, c) <= 0) return false;
    }
    return true;
  };
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 3; ++i)
    if (inside(v[i] + 1e-6 * l) || inside(v[i] - 1e-6 * l)) out.push_back(i);
  return out;
}

std::pair<int, int> hexagon_slot(const Eigen::VectorXd& p) {
  const int h = std::abs(p[0]) + std::abs(p[1]) > 0.5 ? 0 : 1;
  const int k = static_cast<int>(std::lround(std::atan2(p[2 * h + 1], p[2 * h]) / (kPi / 3)));
  return {h, ((k % 6) + 6) % 6};
}

std::string fmt(double x, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

}  // namespace

int main() {
  criterion(1, [](Outcome& o) {
    double worst = 0;
    for (int d = 3; d <= 12; ++d) {
      const double r = covering_radius_exact(cross_polytope_config(d)).radius;
      worst = std::max(worst, std::abs(jung_radius(d) + r - kPi / 2));
    }
    o.detail << " max |jung_radius(d) + R_cross(d) - pi/2| over d=3..12 = " << worst;
    o.require(worst <= 1e-12, "tolerance 1e-12");
  });

  criterion(2, [](Outcome& o) {
    auto cfg = hexagon_pair_config();
    const double r = covering_radius_exact(cfg).radius;
    const double err = std::abs(r - std::acos(std::sqrt(3.0 / 8.0)));
    o.detail << " R = " << fmt(deg(r)) << " deg (error " << err << ")";
    o.require(err <= 1e-9, "radius within 1e-9");

    const auto pts = cfg.expanded();
    ConvexHull hull(pts);
    bool structure = hull.is_simplicial() && hull.planes().size() == 36;
    for (const auto& f : hull.planes()) {
      std::map<int, std::vector<int>> slots;
      for (auto i : f.points) {
        auto [h, k] = hexagon_slot(pts[i].vec());
        slots[h].push_back(k);
      }
      for (int h = 0; h < 2; ++h) {
        const auto& s = slots[h];
        structure = structure && s.size() == 2 && ((s[0] - s[1] + 6) % 6 == 1 || (s[1] - s[0] + 6) % 6 == 1);
      }
    }
    o.detail << ", " << hull.planes().size() << " facets";
    o.require(structure, "36 simplicial facets with two consecutive vertices per hexagon");

    auto cert = certify(make_body_class(BodyKind::kConstantWidth, 4), cfg);
    o.detail << ", X <= " << cert.xray_bound << ", I <= " << cert.illumination_bound
             << ", tight = " << (cert.tight ? "true" : "false");
    o.require(cert.xray_bound == 6 && cert.illumination_bound == 12 && cert.tight && cert.valid, "certificate");
  });

  criterion(3, [](Outcome& o) {
    const double x5 = deg(join_covering_radius(rad(11.25), rad(33.547)));
    const double x6 = deg(join_covering_radius(rad(22.690), rad(22.690)));
    const double t5 = deg(std::acos(std::sqrt(2.0 / 5.0)));
    const double t6 = deg(std::acos(std::sqrt(5.0 / 12.0)));
    o.detail << " join(11.25, 33.547) = " << fmt(x5) << " deg (< " << fmt(t5, 3) << "), join(22.690, 22.690) = "
             << fmt(x6) << " deg (< " << fmt(t6, 3) << ")";
    o.require(std::abs(x5 - 50.572) <= 0.005, "50.572 +- 0.005");
    o.require(std::abs(x6 - 49.278) <= 0.005, "49.278 +- 0.005");
    o.require(x5 < t5 && x6 < t6, "below thresholds");
  });

  // Criterion 4 runs feed criterion 5.
  std::optional<OptimizerRun> run8, run16;
  criterion(4, [&](Outcome& o) {
    run8 = optimize_antipodal_covering(3, 8, 1);
    run16 = optimize_antipodal_covering(3, 16, 1);
    for (const auto* run : {&*run8, &*run16}) {
      const double exact = covering_radius_exact(run->best).radius;
      o.require(verify_antipodal(run->best.expanded()), "verify_antipodal");
      o.require(run->rescored_exact && std::abs(exact - run->best_radius) <= 1e-12, "exact re-score");
    }
    o.detail << " (3,8) -> " << fmt(deg(run8->best_radius)) << " deg (<= 33.647), (3,16) -> "
             << fmt(deg(run16->best_radius)) << " deg (<= 22.790)";
    o.require(deg(run8->best_radius) <= 33.647, "(3,8) radius");
    o.require(deg(run16->best_radius) <= 22.790, "(3,16) radius");
  });

  criterion(5, [&](Outcome& o) {
    if (!run8 || !run16) {
      o.require(false, "criterion 4 outputs unavailable");
      return;
    }
    auto d5 = orthogonal_join(regular_polygon_config(16), run8->best);
    auto d6 = orthogonal_join(run16->best, run16->best);
    auto c5 = certify(make_body_class(BodyKind::kConstantWidth, 5), d5);
    auto c6 = certify(make_body_class(BodyKind::kConstantWidth, 6), d6);
    o.detail << " d=5: R = " << fmt(deg(c5.covering_radius)) << " deg, X <= " << c5.xray_bound
             << "; d=6: R = " << fmt(deg(c6.covering_radius)) << " deg, X <= " << c6.xray_bound;
    o.require(c5.radius_method == RadiusMethod::kExact && c6.radius_method == RadiusMethod::kExact, "exact radii");
    o.require(deg(c5.covering_radius) < 50.768, "d=5 below 50.768");
    o.require(deg(c6.covering_radius) < 49.797, "d=6 below 49.797");
    o.require(c5.valid && c5.xray_bound == 16, "d=5 certificate X <= 16");
    o.require(c6.valid && c6.xray_bound == 32, "d=6 certificate X <= 32");
  });

  criterion(6, [](Outcome& o) {
    auto cube = cube_polytope(3);
    const std::vector<Eigen::Vector3d> diag{{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
    std::vector<UnitVector> lines;
    for (const auto& l : diag) lines.emplace_back(Eigen::VectorXd(l));
    // Oracle agreement per line and per vertex.
    bool agree = true;
    for (const auto& l : diag) agree = agree && covered_by(cube, UnitVector(Eigen::VectorXd(l))) == cube_oracle(cube, l);
    std::mt19937_64 rng(6);
    for (int t = 0; t < 200; ++t) {
      const auto l = random_unit_vector(3, rng);
      agree = agree && covered_by(cube, l) == cube_oracle(cube, l.vec());
    }
    o.require(agree, "cube sign pattern oracle");
    o.require(verify_xray_lines(cube, LineSet(lines)).ok, "four diagonals verify");
    bool subsets_fail = true;
    for (std::size_t skip = 0; skip < 4; ++skip) {
      std::vector<UnitVector> three;
      for (std::size_t i = 0; i < 4; ++i)
        if (i != skip) three.push_back(lines[i]);
      subsets_fail = subsets_fail && !verify_xray_lines(cube, LineSet(three)).ok;
    }
    o.require(subsets_fail, "every 3-subset fails");
    // Oracle lower bound: no line X-rays more than one antipodal vertex pair.
    const auto cube_bound = xray_upper_bound(cube);
    o.require(cube_bound.count == 4, "xray_upper_bound(cube) = 4");

    auto tri = regular_polygon(3);
    bool tri_agree = true;
    std::size_t most = 0;
    for (int i = 0; i < 3600; ++i) {
      const double a = kPi * (i + 0.5) / 3600;
      const Eigen::Vector2d l(std::cos(a), std::sin(a));
      const auto expected = triangle_oracle(tri, l);
      most = std::max(most, expected.size());
      tri_agree = tri_agree && covered_by(tri, UnitVector(Eigen::VectorXd(l))) == expected;
    }
    o.require(tri_agree && most == 1, "triangle angular window oracle");
    const auto tri_bound = xray_upper_bound(tri);
    o.require(tri_bound.count == 3, "xray_upper_bound(triangle) = 3");
    o.detail << " cube: 4 diagonals ok, 3-subsets fail, search = " << cube_bound.count
             << "; triangle: search = " << tri_bound.count << " = 3*2^0";
  });

  criterion(7, [](Outcome& o) {
    auto tri = wna_check(regular_polygon(3));
    o.require(tri.weakly_neighbourly && tri.vertex_count == 3 && tri.xray_lower_bound == std::size_t{3},
              "triangle WNA with lower bound 3");
    auto cube = wna_check(cube_polytope(3));
    o.require(cube.antipodal && !cube.weakly_neighbourly && !cube.xray_lower_bound, "cube antipodal, not WNA");
    std::vector<Polytope> corpus;
    for (int k : {3, 4, 5, 6}) corpus.push_back(regular_polygon(k));
    for (int d = 2; d <= 4; ++d) corpus.push_back(cube_polytope(d));
    for (int d = 2; d <= 5; ++d) corpus.push_back(regular_simplex(d));
    for (int d = 3; d <= 4; ++d) {
      corpus.push_back(cross_polytope(d));
      corpus.push_back(cube_minus_face_polytope(d));
    }
    corpus.push_back(polytope_from_points(hexagon_pair_config().expanded()));
    std::size_t antipodal = 0, wna_both = 0;
    for (const auto& p : corpus) {
      auto r = wna_check(p);
      if (r.antipodal) {
        ++antipodal;
        o.require(static_cast<double>(r.vertex_count) <= r.danzer_grunbaum_bound, "v <= 2^d");
      }
      if (r.xray_lower_bound) {
        ++wna_both;
        o.require(static_cast<double>(r.vertex_count) <= r.conjecture_bound, "v <= 3*2^(d-2)");
      }
      o.require(!r.conjecture_violation, "no conjecture violation");
    }
    o.detail << " triangle WNA (v=3, X>=3); cube antipodal, not WNA; " << corpus.size() << " polytopes, "
             << antipodal << " antipodal within 2^d, " << wna_both << " WNA+antipodal within 3*2^(d-2)";
  });

  criterion(8, [](Outcome& o) {
    std::mt19937_64 rng(8);
    std::size_t checked = 0;
    double worst_rot = 0;
    for (int t = 0; t < 50; ++t) {
      const int d = 3 + t % 2;
      PointSet base;
      for (int i = 0; i < d + 2 + t % 6; ++i) base.push_back(random_unit_vector(d, rng));
      AntipodalConfig cfg(d, base);
      const double exact = covering_radius_exact(cfg).radius;
      const double sampled = covering_radius_sampled(cfg, 20000, static_cast<std::uint64_t>(t)).radius;
      o.require(sampled <= exact, "sampled <= exact");
      ++checked;
      const Eigen::MatrixXd q = random_orthogonal(d, rng);
      AntipodalConfig moved(d, rotate(q, cfg.base_points()));
      worst_rot = std::max(worst_rot, std::abs(covering_radius_exact(moved).radius - exact));
    }
    o.require(worst_rot <= 1e-8, "radius rotation invariance 1e-8");

    for (const auto& [body, cfg] : std::vector<std::pair<BodyClass, AntipodalConfig>>{
             {make_body_class(BodyKind::kConstantWidth, 4), hexagon_pair_config()},
             {make_body_class(BodyKind::kAlmostSmooth, 5), cross_polytope_config(5)}}) {
      const auto a = certify(body, cfg);
      const auto b = certify(body, AntipodalConfig(cfg.dim(), rotate(random_orthogonal(cfg.dim(), rng), cfg.base_points())));
      o.require(std::abs(a.margin - b.margin) <= 1e-8 && a.valid == b.valid && a.xray_bound == b.xray_bound,
                "certificate rotation invariance 1e-8");
    }

    Schedule s;
    s.budget = 3000;
    s.restarts = 4;
    const auto r1 = run_to_json(optimize_antipodal_covering(3, 8, 11, s)).dump();
    const auto r2 = run_to_json(optimize_antipodal_covering(3, 8, 11, s)).dump();
    o.require(r1 == r2, "optimizer determinism");

    const auto path = (std::filesystem::temp_directory_path() / "antipodal-acceptance-roundtrip.json").string();
    bool round_trip = true;
    for (const auto& cfg : {hexagon_pair_config(), shipped_config("s2-16pairs"), cross_polytope_config(7)}) {
      save_config(cfg, path);
      round_trip = round_trip && config_to_json(load_config(path).config) == config_to_json(cfg);
    }
    std::filesystem::remove(path);
    o.require(round_trip, "config JSON round trip");
    o.detail << " " << checked << " random configs sampled <= exact; rotation drift " << worst_rot
             << "; determinism and round trip checked";
  });

  return failures == 0 ? 0 : 1;
}
