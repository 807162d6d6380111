#include "antipodal/hull3.hpp"

#include <cmath>

namespace antipodal {
namespace {

constexpr double kEps = 1e-12;

struct Face {
  std::array<int, 3> v;
  Eigen::Vector3d normal;
  double offset;
  bool alive;
};

bool make_face(const std::vector<Eigen::Vector3d>& p, int a, int b, int c, Face& f) {
  Eigen::Vector3d n = (p[b] - p[a]).cross(p[c] - p[a]);
  const double len = n.norm();
  if (len <= kEps) return false;
  n /= len;
  f = {{a, b, c}, n, n.dot(p[a]), true};
  return true;
}

}  // namespace

std::vector<Triangle3> hull3_triangles(const std::vector<Eigen::Vector3d>& p) {
  const int n = static_cast<int>(p.size());
  if (n < 4) return {};

  // Initial tetrahedron from extreme points.
  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  double best = kEps;
  for (int i = 1; i < n; ++i) {
    const double d = (p[i] - p[i0]).squaredNorm();
    if (d > best) best = d, i1 = i;
  }
  if (i1 < 0) return {};
  const Eigen::Vector3d axis = (p[i1] - p[i0]).normalized();
  best = kEps;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d w = p[i] - p[i0];
    const double d = (w - w.dot(axis) * axis).squaredNorm();
    if (d > best) best = d, i2 = i;
  }
  if (i2 < 0) return {};
  const Eigen::Vector3d pn = (p[i1] - p[i0]).cross(p[i2] - p[i0]).normalized();
  best = 1e-10;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(pn.dot(p[i] - p[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (i3 < 0) return {};
  if (pn.dot(p[i3] - p[i0]) > 0) std::swap(i1, i2);

  std::vector<Face> faces;
  faces.reserve(4 * n);
  // edge_face[a * n + b]: face holding the directed edge a -> b.
  std::vector<int> edge_face(static_cast<std::size_t>(n) * n, -1);
  auto add = [&](int a, int b, int c) {
    Face f;
    if (!make_face(p, a, b, c, f)) {
      // Sliver: keep combinatorics consistent with a zero-area face.
      f = {{a, b, c}, Eigen::Vector3d::Zero(), 0.0, true};
    }
    const int id = static_cast<int>(faces.size());
    faces.push_back(f);
    edge_face[a * n + b] = edge_face[b * n + c] = edge_face[c * n + a] = id;
  };
  add(i0, i1, i2);
  add(i0, i3, i1);
  add(i1, i3, i2);
  add(i2, i3, i0);

  std::vector<int> visible;
  std::vector<std::array<int, 2>> horizon;
  std::vector<char> is_visible;
  for (int q = 0; q < n; ++q) {
    if (q == i0 || q == i1 || q == i2 || q == i3) continue;
    visible.clear();
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      const auto& face = faces[f];
      if (!face.alive) continue;
      const bool sliver = face.normal.squaredNorm() == 0.0;
      const double s = sliver ? 0.0 : face.normal.dot(p[q]) - face.offset;
      if (s > kEps) visible.push_back(f);
    }
    if (visible.empty()) continue;
    is_visible.assign(faces.size(), 0);
    for (int f : visible) is_visible[f] = 1;
    horizon.clear();
    for (int f : visible) {
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        const int a = v[e], b = v[(e + 1) % 3];
        const int other = edge_face[b * n + a];
        if (other < 0 || !is_visible[other]) horizon.push_back({a, b});
      }
    }
    for (int f : visible) {
      faces[f].alive = false;
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e)
        if (edge_face[v[e] * n + v[(e + 1) % 3]] == f) edge_face[v[e] * n + v[(e + 1) % 3]] = -1;
    }
    for (const auto& h : horizon) add(h[0], h[1], q);
  }

  std::vector<Triangle3> out;
  for (const auto& f : faces) {
    if (f.alive && f.normal.squaredNorm() > 0.0) out.push_back({f.v, f.normal, f.offset});
  }
  return out;
}

}  // namespace antipodal
