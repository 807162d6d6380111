#include "antipodal/hull.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "antipodal/errors.hpp"

namespace antipodal {
namespace {

using Points = std::vector<Eigen::VectorXd>;
using Index = std::size_t;

constexpr int kMaxDim = 12;
// Small fixed-capacity types keep the wrapping loop off the heap.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

struct Plane {
  std::vector<Index> points;  // sorted contact set
  Vec normal;
  double offset = 0.0;
};

struct Ridge {
  std::vector<Index> points;
  Vec outward;  // lies in the facet hyperplane, points away from the facet
};

// Orthonormal basis (columns) of the complement of unit vector n.
Mat complement_basis(const Vec& n) {
  const auto k = n.size();
  Mat a(k, 1);
  a.col(0) = n;
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(k, k);
  return q.rightCols(k - 1);
}

// Row-major copy of the input with reusable scratch space.
class Cloud {
 public:
  Cloud(const Points& pts, double tol)
      : n_(pts.size()), k_(static_cast<int>(pts[0].size())), tol_(tol), data_(n_ * k_), mark_(n_, 0) {
    for (Index j = 0; j < n_; ++j)
      for (int c = 0; c < k_; ++c) data_[j * k_ + c] = pts[j][c];
  }

  Index size() const { return n_; }
  int dim() const { return k_; }
  double tol() const { return tol_; }

  Vec point(Index j) const { return Eigen::Map<const Vec>(&data_[j * k_], k_); }

  double dot(Index j, const Vec& v) const {
    const double* p = &data_[j * k_];
    double s = 0.0;
    for (int c = 0; c < k_; ++c) s += p[c] * v[c];
    return s;
  }

  std::vector<Index> contact_set(const Vec& n, double h) const {
    std::vector<Index> out;
    for (Index j = 0; j < n_; ++j) {
      if (std::abs(dot(j, n) - h) <= tol_) out.push_back(j);
    }
    return out;
  }

  // Least-squares hyperplane through the contact set, oriented like `guess`.
  void refit(Plane& f, const Vec& guess) const {
    Vec c = Vec::Zero(k_);
    for (Index i : f.points) c += point(i);
    c /= static_cast<double>(f.points.size());
    Eigen::MatrixXd m(k_, static_cast<Eigen::Index>(f.points.size()));
    for (std::size_t i = 0; i < f.points.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = point(f.points[i]) - c;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    // A contact set that does not span a hyperplane keeps the rotated normal.
    if (sv.size() < k_ - 1 || sv[k_ - 2] <= tol_) {
      f.normal = guess;
      f.offset = guess.dot(c);
      return;
    }
    Vec n = svd.matrixU().col(k_ - 1);
    if (n.dot(guess) < 0) n = -n;
    f.normal = n;
    f.offset = n.dot(c);
  }

  // Rotates the supporting hyperplane (normal n) about the affine set through
  // r0 orthogonal to w, towards w, until it meets a point outside `on_plane`.
  Plane rotate_about(const std::vector<Index>& on_plane, const Vec& r0, const Vec& n, const Vec& w) {
    ++stamp_;
    for (Index i : on_plane) mark_[i] = stamp_;
    const double a0 = r0.dot(w), b0 = r0.dot(n);
    // Candidates sit strictly below the plane (b < 0), so the largest polar
    // angle is found by cross-product comparisons.
    double a_best = 0.0, b_best = 0.0;
    Index p_best = n_;
    for (Index j = 0; j < n_; ++j) {
      if (mark_[j] == stamp_) continue;
      const double a = dot(j, w) - a0;
      const double b = dot(j, n) - b0;
      if (p_best == n_ || a_best * b - b_best * a > 0.0) {
        a_best = a;
        b_best = b;
        p_best = j;
      }
    }
    if (p_best == n_) throw DegenerateInput("hull: no point left to wrap onto");
    const Vec n2 = (-b_best * w + a_best * n).normalized();
    Plane f;
    f.points = contact_set(n2, dot(p_best, n2));
    if (static_cast<int>(f.points.size()) > k_) {
      refit(f, n2);
    } else {
      f.normal = n2;
      double h = 0.0;
      for (Index i : f.points) h += dot(i, n2);
      f.offset = h / static_cast<double>(f.points.size());
    }
    return f;
  }

  // Orthonormal basis of span{p_i - p_idx[0]}, rank by tolerance.
  Eigen::MatrixXd direction_basis(const std::vector<Index>& idx) const {
    if (idx.size() < 2) return Eigen::MatrixXd(k_, 0);
    Eigen::MatrixXd m(k_, static_cast<Eigen::Index>(idx.size() - 1));
    for (std::size_t i = 1; i < idx.size(); ++i)
      m.col(static_cast<Eigen::Index>(i - 1)) = point(idx[i]) - point(idx[0]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > tol_) ++rank;
    return svd.matrixU().leftCols(rank);
  }

 private:
  Index n_;
  int k_;
  double tol_;
  std::vector<double> data_;
  std::vector<unsigned> mark_;
  unsigned stamp_ = 0;
};

std::vector<Plane> wrap(const Points& pts, double tol);

std::vector<Ridge> facet_ridges(const Cloud& cloud, const Plane& f) {
  const int k = cloud.dim();
  std::vector<Ridge> ridges;
  if (static_cast<int>(f.points.size()) == k) {
    // Rows of the inverse of [v_1 - v_0, ..., v_{k-1} - v_0, n] are the
    // gradients of the barycentric coordinates inside the facet hyperplane.
    Mat e(k, k);
    const Vec v0 = cloud.point(f.points[0]);
    for (int i = 1; i < k; ++i) e.col(i - 1) = cloud.point(f.points[i]) - v0;
    e.col(k - 1) = f.normal;
    const Mat inv = e.inverse();
    Vec grad0 = Vec::Zero(k);
    for (int i = 1; i < k; ++i) grad0 -= inv.row(i - 1).transpose();
    for (int drop = 0; drop < k; ++drop) {
      Ridge r;
      r.points.reserve(k - 1);
      for (int i = 0; i < k; ++i)
        if (i != drop) r.points.push_back(f.points[i]);
      const Vec grad = drop == 0 ? grad0 : Vec(inv.row(drop - 1).transpose());
      r.outward = -grad.normalized();
      ridges.push_back(std::move(r));
    }
    return ridges;
  }
  const Mat basis = complement_basis(f.normal);
  Vec c = Vec::Zero(k);
  for (Index i : f.points) c += cloud.point(i);
  c /= static_cast<double>(f.points.size());
  Points local;
  local.reserve(f.points.size());
  for (Index i : f.points) local.push_back(basis.transpose() * (cloud.point(i) - c));
  for (const auto& sub : wrap(local, cloud.tol())) {
    Ridge r;
    for (Index i : sub.points) r.points.push_back(f.points[i]);
    r.outward = (basis * sub.normal).normalized();
    ridges.push_back(std::move(r));
  }
  return ridges;
}

Plane initial_facet(Cloud& cloud) {
  const int k = cloud.dim();
  Vec n = Vec::Unit(k, 0);
  double h = -std::numeric_limits<double>::infinity();
  for (Index j = 0; j < cloud.size(); ++j) h = std::max(h, cloud.dot(j, n));
  Plane f;
  f.points = cloud.contact_set(n, h);
  f.normal = n;
  f.offset = h;
  for (;;) {
    const Eigen::MatrixXd dirs = cloud.direction_basis(f.points);
    if (dirs.cols() >= k - 1) {
      cloud.refit(f, f.normal);
      return f;
    }
    Eigen::MatrixXd span(k, dirs.cols() + 1);
    span.col(0) = f.normal;
    span.rightCols(dirs.cols()) = dirs;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(span);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, span.cols());
    Vec w;
    double best = -1.0;
    for (int j = 0; j < k; ++j) {
      Vec e = Vec::Unit(k, j);
      e -= q * (q.transpose() * e);
      if (e.norm() > best) {
        best = e.norm();
        w = e;
      }
    }
    f = cloud.rotate_about(f.points, cloud.point(f.points[0]), f.normal, w.normalized());
  }
}

std::vector<Plane> wrap(const Points& pts, double tol) {
  const auto k = pts[0].size();
  if (k == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    if (hi - lo <= tol) throw DegenerateInput("hull: flat input", 0);
    Plane a, b;
    a.normal = Vec::Constant(1, -1.0);
    a.offset = -lo;
    b.normal = Vec::Constant(1, 1.0);
    b.offset = hi;
    for (Index j = 0; j < pts.size(); ++j) {
      if (pts[j][0] - lo <= tol) a.points.push_back(j);
      if (hi - pts[j][0] <= tol) b.points.push_back(j);
    }
    return {a, b};
  }

  Cloud cloud(pts, tol);
  std::vector<Plane> out;
  std::map<std::vector<Index>, Index> seen;
  std::deque<Index> queue;
  auto add = [&](Plane f) {
    if (seen.emplace(f.points, out.size()).second) {
      queue.push_back(out.size());
      out.push_back(std::move(f));
    }
  };
  // Ridges already crossed from the other side need no second rotation.
  std::set<std::vector<Index>> crossed;
  add(initial_facet(cloud));
  while (!queue.empty()) {
    const Plane f = out[queue.front()];
    queue.pop_front();
    for (const auto& r : facet_ridges(cloud, f)) {
      if (crossed.erase(r.points) > 0) continue;
      Plane g = cloud.rotate_about(f.points, cloud.point(r.points[0]), f.normal, r.outward);
      if (seen.count(g.points) == 0 && g.points.size() == static_cast<std::size_t>(k)) crossed.insert(r.points);
      add(std::move(g));
    }
  }
  return out;
}

// Pulling triangulation of a full-dimensional point set; returns simplices as
// local index lists.
std::vector<std::vector<Index>> triangulate(const Points& pts, double tol) {
  const auto k = pts[0].size();
  if (k == 1) {
    Index lo = 0, hi = 0;
    for (Index j = 1; j < pts.size(); ++j) {
      if (pts[j][0] < pts[lo][0]) lo = j;
      if (pts[j][0] > pts[hi][0]) hi = j;
    }
    return {{std::min(lo, hi), std::max(lo, hi)}};
  }
  if (static_cast<Eigen::Index>(pts.size()) == k + 1) {
    std::vector<Index> all(pts.size());
    for (Index j = 0; j < all.size(); ++j) all[j] = j;
    return {all};
  }
  Index apex = 0;
  for (Index j = 1; j < pts.size(); ++j) {
    if (std::lexicographical_compare(pts[j].begin(), pts[j].end(), pts[apex].begin(), pts[apex].end())) apex = j;
  }
  std::vector<std::vector<Index>> out;
  for (const auto& f : wrap(pts, tol)) {
    if (std::binary_search(f.points.begin(), f.points.end(), apex)) continue;
    const Mat basis = complement_basis(f.normal);
    Points local;
    for (Index i : f.points) local.push_back(basis.transpose() * (pts[i] - pts[f.points[0]]));
    for (auto s : triangulate(local, tol)) {
      for (auto& i : s) i = f.points[i];
      s.push_back(apex);
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

double spread(const Points& pts) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(pts[0].size());
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, (p - c).norm());
  return s;
}

}  // namespace

int affine_dimension(std::span<const Eigen::VectorXd> points, double abs_tol) {
  if (points.size() < 2) return 0;
  const auto k = points[0].size();
  Eigen::MatrixXd m(k, static_cast<Eigen::Index>(points.size() - 1));
  for (std::size_t i = 1; i < points.size(); ++i) m.col(static_cast<Eigen::Index>(i - 1)) = points[i] - points[0];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > abs_tol) ++rank;
  return rank;
}

ConvexHull::ConvexHull(std::vector<Eigen::VectorXd> points, double rel_tol) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("convex hull of an empty set");
  dim_ = static_cast<int>(points_[0].size());
  if (dim_ < 2 || dim_ > kMaxDim) throw InvalidArgument("convex hull supports dimensions 2..12");
  for (const auto& p : points_) {
    if (p.size() != dim_) throw DimensionMismatch("convex hull: mixed dimensions");
  }
  tol_ = rel_tol * std::max(spread(points_), 1e-300);
  const int adim = affine_dimension(points_, tol_);
  if (adim < dim_) {
    throw DegenerateInput("convex hull: input spans affine dimension " + std::to_string(adim) + " < " +
                              std::to_string(dim_),
                          adim);
  }
  for (auto& p : wrap(points_, tol_)) {
    planes_.push_back({std::move(p.points), Eigen::VectorXd(p.normal), p.offset});
  }
}

ConvexHull::ConvexHull(std::span<const UnitVector> points, double rel_tol)
    : ConvexHull(
          [&] {
            Points pts;
            pts.reserve(points.size());
            for (const auto& p : points) pts.push_back(p.vec());
            return pts;
          }(),
          rel_tol) {}

bool ConvexHull::is_simplicial() const {
  return std::all_of(planes_.begin(), planes_.end(),
                     [&](const FacetPlane& f) { return static_cast<int>(f.points.size()) == dim_; });
}

std::vector<std::size_t> ConvexHull::vertices() const {
  std::vector<std::vector<Index>> incident(points_.size());
  for (Index f = 0; f < planes_.size(); ++f)
    for (Index i : planes_[f].points) incident[i].push_back(f);
  std::vector<std::size_t> out;
  for (Index i = 0; i < points_.size(); ++i) {
    if (static_cast<int>(incident[i].size()) < dim_) continue;
    Eigen::MatrixXd m(dim_, static_cast<Eigen::Index>(incident[i].size()));
    for (std::size_t j = 0; j < incident[i].size(); ++j) m.col(static_cast<Eigen::Index>(j)) = planes_[incident[i][j]].normal;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    if (svd.singularValues()[dim_ - 1] > 1e-9) out.push_back(i);
  }
  return out;
}

std::vector<HullFacet> ConvexHull::facets() const {
  std::vector<HullFacet> out;
  for (Index f = 0; f < planes_.size(); ++f) {
    const auto& pl = planes_[f];
    const UnitVector normal(pl.normal);
    if (static_cast<int>(pl.points.size()) == dim_) {
      out.push_back({pl.points, normal, pl.offset, f, false});
      continue;
    }
    const Mat basis = complement_basis(Vec(pl.normal));
    Points local;
    for (Index i : pl.points) local.push_back(basis.transpose() * (points_[i] - points_[pl.points[0]]));
    for (auto s : triangulate(local, tol_)) {
      for (auto& i : s) i = pl.points[i];
      out.push_back({std::move(s), normal, pl.offset, f, true});
    }
  }
  return out;
}

double ConvexHull::min_offset() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : planes_) m = std::min(m, f.offset);
  return m;
}

std::vector<HullFacet> convex_hull_facets(std::span<const Eigen::VectorXd> points) {
  return ConvexHull(std::vector<Eigen::VectorXd>(points.begin(), points.end())).facets();
}

std::vector<HullFacet> convex_hull_facets(std::span<const UnitVector> points) {
  return ConvexHull(points).facets();
}

bool contains_origin_interior(std::span<const HullFacet> facets, double tol) {
  if (facets.empty()) return false;
  return std::all_of(facets.begin(), facets.end(), [&](const HullFacet& f) { return f.support_offset > tol; });
}

}  // namespace antipodal
