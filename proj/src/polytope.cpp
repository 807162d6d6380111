#include "antipodal/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "antipodal/config_io.hpp"
#include "antipodal/errors.hpp"
#include "antipodal/lp.hpp"
#include "antipodal/set_cover.hpp"

namespace antipodal {

Polytope::Polytope(std::vector<Eigen::VectorXd> vertices) : hull_(std::move(vertices)) {
  const auto verts = hull_.vertices();
  if (verts.size() != hull_.points().size()) {
    std::vector<bool> is_vertex(hull_.points().size(), false);
    for (auto v : verts) is_vertex[v] = true;
    std::size_t bad = 0;
    while (is_vertex[bad]) ++bad;
    throw InvalidArgument("polytope: point " + std::to_string(bad) + " is not a vertex of the convex hull");
  }
  incidence_.resize(hull_.points().size());
  for (std::size_t f = 0; f < hull_.planes().size(); ++f) {
    for (auto v : hull_.planes()[f].points) incidence_[v].push_back(f);
  }
}

NormalCone normal_cone(const Polytope& p, std::vector<std::size_t> face) {
  if (face.empty()) throw InvalidArgument("normal_cone: empty vertex set");
  std::sort(face.begin(), face.end());
  face.erase(std::unique(face.begin(), face.end()), face.end());
  if (face.back() >= p.vertex_count()) throw InvalidArgument("normal_cone: vertex index out of range");

  NormalCone cone{face, {}};
  std::vector<std::size_t> common;
  bool first = true;
  for (const auto& f : p.facets()) {
    if (!std::includes(f.points.begin(), f.points.end(), face.begin(), face.end())) continue;
    cone.generators.emplace_back(f.normal);
    if (first) {
      common = f.points;
      first = false;
    } else {
      std::vector<std::size_t> next;
      std::set_intersection(common.begin(), common.end(), f.points.begin(), f.points.end(), std::back_inserter(next));
      common = std::move(next);
    }
  }
  if (cone.generators.empty() || common != face)
    throw InvalidArgument("normal_cone: the vertex set is not the vertex set of a face");
  return cone;
}

LineSet::LineSet(const std::vector<UnitVector>& directions) {
  for (const auto& d : directions) add(d);
}

bool LineSet::add(const UnitVector& direction) {
  for (const auto& d : dirs_) {
    if (d.dim() != direction.dim()) throw DimensionMismatch("LineSet: mixed dimensions");
    if ((d.vec() - direction.vec()).norm() <= 1e-9 || (d.vec() + direction.vec()).norm() <= 1e-9) return false;
  }
  dirs_.push_back(direction);
  return true;
}

bool line_xrays_face(const NormalCone& cone, const UnitVector& direction) {
  bool pos = true, neg = true;
  for (const auto& g : cone.generators) {
    const double s = g.dot(direction);
    pos = pos && s > kStrictTolerance;
    neg = neg && s < -kStrictTolerance;
  }
  return !cone.generators.empty() && (pos || neg);
}

namespace {

std::vector<NormalCone> vertex_cones(const Polytope& p) {
  std::vector<NormalCone> cones;
  cones.reserve(p.vertex_count());
  for (std::size_t v = 0; v < p.vertex_count(); ++v) {
    NormalCone c{{v}, {}};
    for (auto f : p.vertex_facets(v)) c.generators.emplace_back(p.facets()[f].normal);
    cones.push_back(std::move(c));
  }
  return cones;
}

// cover[l][v]: line l X-rays vertex v. Rows are independent, so large
// matrices are split across threads by line.
CoverMatrix coverage(const std::vector<NormalCone>& cones, const std::vector<UnitVector>& lines) {
  CoverMatrix cover(lines.size(), std::vector<bool>(cones.size(), false));
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t l = begin; l < end; ++l) {
      std::vector<bool> row(cones.size());
      for (std::size_t v = 0; v < cones.size(); ++v) row[v] = line_xrays_face(cones[v], lines[l]);
      cover[l] = std::move(row);
    }
  };
  const std::size_t work = lines.size() * cones.size();
  const std::size_t workers =
      work < 20000 ? 1 : std::max<std::size_t>(1, std::min<std::size_t>(lines.size(), std::thread::hardware_concurrency()));
  if (workers == 1) {
    fill(0, lines.size());
    return cover;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (lines.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = std::min(lines.size(), w * chunk), e = std::min(lines.size(), b + chunk);
    pool.emplace_back(fill, b, e);
  }
  for (auto& t : pool) t.join();
  return cover;
}

}  // namespace

XrayReport verify_xray_lines(const Polytope& p, const LineSet& lines) {
  for (const auto& l : lines.directions()) {
    if (l.dim() != p.dim()) throw DimensionMismatch("verify_xray_lines: line dimension differs from polytope");
  }
  const auto cones = vertex_cones(p);
  const auto cover = coverage(cones, lines.directions());
  XrayReport r;
  r.covering_line.assign(cones.size(), -1);
  for (std::size_t v = 0; v < cones.size(); ++v) {
    bool marginal = false;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      if (r.covering_line[v] < 0 && cover[l][v]) r.covering_line[v] = static_cast<int>(l);
      for (const auto& g : cones[v].generators) {
        if (std::abs(g.dot(lines.directions()[l])) < kMarginalTolerance) marginal = true;
      }
    }
    if (r.covering_line[v] < 0) r.uncovered.push_back(v);
    if (marginal) r.marginal.push_back(v);
  }
  r.ok = r.uncovered.empty();
  return r;
}

XraySearchResult xray_upper_bound(const Polytope& p, std::size_t random_candidates, std::uint64_t seed) {
  const int d = p.dim();
  const auto cones = vertex_cones(p);
  LineSet pool;
  for (const auto& f : p.facets()) pool.add(UnitVector(f.normal));
  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
  for (const auto& v : p.vertices()) centroid += v;
  centroid /= static_cast<double>(p.vertex_count());
  for (const auto& v : p.vertices()) {
    if ((v - centroid).norm() > 1e-12) pool.add(UnitVector(Eigen::VectorXd(v - centroid)));
  }
  for (const auto& c : cones) {
    try {
      pool.add(min_enclosing_cap(c.generators).cap.center);
    } catch (const Error&) {
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_candidates; ++i) pool.add(random_unit_vector(d, rng));

  const auto& cand = pool.directions();
  const auto cover = coverage(cones, cand);
  std::vector<std::size_t> uncoverable;
  for (std::size_t v = 0; v < cones.size(); ++v) {
    bool any = false;
    for (const auto& row : cover) any = any || row[v];
    if (!any) uncoverable.push_back(v);
  }
  if (!uncoverable.empty()) {
    std::string list;
    for (auto v : uncoverable) list += (list.empty() ? "" : ", ") + std::to_string(v);
    throw Error("xray_upper_bound: no candidate line X-rays vertices " + list);
  }

  const auto keep = prune_dominated(cover, cones.size());
  CoverMatrix reduced;
  for (auto i : keep) reduced.push_back(cover[i]);
  const bool exact = reduced.size() <= 20;
  const auto picks = exact ? exact_set_cover(reduced, cones.size()) : greedy_set_cover(reduced, cones.size());

  XraySearchResult out;
  for (auto i : *picks) out.lines.add(cand[keep[i]]);
  out.count = out.lines.size();
  out.report = verify_xray_lines(p, out.lines);
  out.pool_size = cand.size();
  out.pruned_size = reduced.size();
  out.exact = exact;
  if (!out.report.ok) throw Error("xray_upper_bound: selected lines failed re-verification");
  return out;
}

namespace {
void check_pair(const Polytope& p, std::size_t u, std::size_t v, const char* who) {
  if (u >= p.vertex_count() || v >= p.vertex_count())
    throw InvalidArgument(std::string(who) + ": vertex index out of range");
  if (u == v) throw InvalidArgument(std::string(who) + ": the two vertices must be distinct");
}
}  // namespace

bool is_antipodal_pair(const Polytope& p, std::size_t u, std::size_t v) {
  check_pair(p, u, v, "is_antipodal_pair");
  const int d = p.dim();
  const auto& x = p.vertices();
  // Find c with <c, u> >= <c, x> >= <c, v> for all x and <c, u - v> = 1.
  lp::Problem prob(d);
  prob.free_var.assign(d, true);
  auto row_of = [&](const Eigen::VectorXd& w) { return std::vector<double>(w.data(), w.data() + d); };
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k == u || k == v) continue;
    prob.add(row_of(x[u] - x[k]), lp::Sense::kGreaterEqual, 0.0);
    prob.add(row_of(x[k] - x[v]), lp::Sense::kGreaterEqual, 0.0);
  }
  prob.add(row_of(x[u] - x[v]), lp::Sense::kEqual, 1.0);
  return lp::solve(prob).status == lp::Status::kOptimal;
}

bool on_common_face(const Polytope& p, std::size_t u, std::size_t v) {
  check_pair(p, u, v, "on_common_face");
  const auto& fu = p.vertex_facets(u);
  for (auto f : p.vertex_facets(v)) {
    if (std::find(fu.begin(), fu.end(), f) != fu.end()) return true;
  }
  return false;
}

WnaReport wna_check(const Polytope& p) {
  WnaReport r;
  r.dim = p.dim();
  r.vertex_count = p.vertex_count();
  r.conjecture_bound = 3.0 * std::ldexp(1.0, r.dim - 2);
  r.danzer_grunbaum_bound = std::ldexp(1.0, r.dim);
  r.weakly_neighbourly = true;
  r.antipodal = true;
  for (std::size_t u = 0; u < r.vertex_count; ++u) {
    for (std::size_t v = u + 1; v < r.vertex_count; ++v) {
      if (r.weakly_neighbourly && !on_common_face(p, u, v)) {
        r.weakly_neighbourly = false;
        r.non_neighbourly_pair = {u, v};
      }
      if (r.antipodal && !is_antipodal_pair(p, u, v)) {
        r.antipodal = false;
        r.non_antipodal_pair = {u, v};
      }
    }
  }
  if (r.weakly_neighbourly && r.antipodal) {
    r.xray_lower_bound = r.vertex_count;
    r.conjecture_violation = static_cast<double>(r.vertex_count) > r.conjecture_bound;
  }
  return r;
}

Polytope cube_polytope(int d) {
  if (d < 2) throw InvalidArgument("cube needs d >= 2");
  std::vector<Eigen::VectorXd> v;
  for (unsigned i = 0; i < (1u << d); ++i) {
    Eigen::VectorXd x(d);
    for (int k = 0; k < d; ++k) x[k] = (i >> k) & 1u ? 1.0 : -1.0;
    v.push_back(std::move(x));
  }
  return Polytope(std::move(v));
}

Polytope cross_polytope(int d) {
  if (d < 2) throw InvalidArgument("cross polytope needs d >= 2");
  std::vector<Eigen::VectorXd> v;
  for (int k = 0; k < d; ++k) {
    v.push_back(Eigen::VectorXd::Unit(d, k));
    v.push_back(-Eigen::VectorXd::Unit(d, k));
  }
  return Polytope(std::move(v));
}

Polytope regular_simplex(int d) {
  if (d < 2) throw InvalidArgument("simplex needs d >= 2");
  // e_1, ..., e_d and a (1, ..., 1) are pairwise sqrt(2) apart for this a.
  const double a = (1.0 - std::sqrt(d + 1.0)) / d;
  std::vector<Eigen::VectorXd> v;
  for (int k = 0; k < d; ++k) v.push_back(Eigen::VectorXd::Unit(d, k));
  v.push_back(Eigen::VectorXd::Constant(d, a));
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
  for (const auto& x : v) c += x;
  c /= d + 1.0;
  for (auto& x : v) x -= c;
  return Polytope(std::move(v));
}

Polytope regular_polygon(int k) {
  if (k < 3) throw InvalidArgument("polygon needs k >= 3");
  std::vector<Eigen::VectorXd> v;
  for (int j = 0; j < k; ++j) {
    const double t = 2.0 * kPi * j / k + kPi / 2;
    v.push_back(Eigen::Vector2d(std::cos(t), std::sin(t)));
  }
  return Polytope(std::move(v));
}

Polytope cube_minus_face_polytope(int d) {
  if (d < 2) throw InvalidArgument("cube minus face needs d >= 2");
  // Drops the (d-2)-face x_1 = x_2 = 1.
  std::vector<Eigen::VectorXd> v;
  for (unsigned i = 0; i < (1u << d); ++i) {
    if ((i & 3u) == 3u) continue;
    Eigen::VectorXd x(d);
    for (int k = 0; k < d; ++k) x[k] = (i >> k) & 1u ? 1.0 : -1.0;
    v.push_back(std::move(x));
  }
  return Polytope(std::move(v));
}

Polytope polytope_from_points(const std::vector<UnitVector>& points) {
  std::vector<Eigen::VectorXd> v;
  for (const auto& p : points) v.push_back(p.vec());
  return Polytope(std::move(v));
}

namespace {

nlohmann::json rows_to_json(const std::vector<Eigen::VectorXd>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) out.push_back(std::vector<double>(r.data(), r.data() + r.size()));
  return out;
}

std::vector<Eigen::VectorXd> rows_from_json(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw FormatError(std::string("expected an object with integer 'dim' and '") + key + "'");
  const int d = j["dim"].get<int>();
  if (d < 2) throw FormatError("'dim' must be >= 2");
  if (!j.contains(key) || !j[key].is_array()) throw FormatError(std::string("missing array '") + key + "'");
  std::vector<Eigen::VectorXd> rows;
  for (const auto& r : j[key]) {
    if (!r.is_array() || static_cast<int>(r.size()) != d)
      throw DimensionMismatch(std::string("every entry of '") + key + "' needs " + std::to_string(d) + " numbers");
    Eigen::VectorXd x(d);
    for (int k = 0; k < d; ++k) {
      if (!r[k].is_number()) throw FormatError("coordinates must be numbers");
      x[k] = r[k].get<double>();
    }
    rows.push_back(std::move(x));
  }
  return rows;
}

}  // namespace

nlohmann::json polytope_to_json(const Polytope& p) {
  return {{"dim", p.dim()}, {"vertices", rows_to_json(p.vertices())}};
}

Polytope polytope_from_json(const nlohmann::json& j) {
  auto rows = rows_from_json(j, "vertices");
  const int d = j["dim"].get<int>();
  if (static_cast<int>(rows.size()) < d + 1) throw DegenerateInput("polytope needs at least d+1 vertices", -1);
  return Polytope(std::move(rows));
}

Polytope load_polytope(const std::string& path) { return polytope_from_json(read_json_file(path)); }

nlohmann::json lines_to_json(const LineSet& lines) {
  std::vector<Eigen::VectorXd> rows;
  for (const auto& l : lines.directions()) rows.push_back(l.vec());
  const int d = lines.size() ? lines.directions()[0].dim() : 0;
  return {{"dim", d}, {"lines", rows_to_json(rows)}};
}

LineSet lines_from_json(const nlohmann::json& j) {
  LineSet out;
  for (const auto& r : rows_from_json(j, "lines")) {
    if (r.norm() == 0.0) throw FormatError("line direction must be nonzero");
    out.add(UnitVector(r));
  }
  return out;
}

nlohmann::json xray_report_to_json(const XrayReport& r) {
  return {{"ok", r.ok}, {"uncovered_vertices", r.uncovered}, {"marginal_vertices", r.marginal},
          {"covering_line", r.covering_line}};
}

nlohmann::json wna_report_to_json(const WnaReport& r) {
  auto pair = [](const std::optional<std::pair<std::size_t, std::size_t>>& p) {
    return p ? nlohmann::json::array({p->first, p->second}) : nlohmann::json();
  };
  return {{"dim", r.dim},
          {"vertex_count", r.vertex_count},
          {"weakly_neighbourly", r.weakly_neighbourly},
          {"antipodal", r.antipodal},
          {"conjecture_bound", r.conjecture_bound},
          {"danzer_grunbaum_bound", r.danzer_grunbaum_bound},
          {"xray_lower_bound", r.xray_lower_bound ? nlohmann::json(*r.xray_lower_bound) : nlohmann::json()},
          {"conjecture_violation", r.conjecture_violation},
          {"non_neighbourly_pair", pair(r.non_neighbourly_pair)},
          {"non_antipodal_pair", pair(r.non_antipodal_pair)}};
}

}  // namespace antipodal
