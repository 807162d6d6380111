#include "antipodal/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "antipodal/errors.hpp"
#include "antipodal/lp.hpp"

namespace antipodal {

UnitVector::UnitVector(const Eigen::VectorXd& v) {
  if (v.size() < 2) throw InvalidArgument("unit vector needs dimension >= 2");
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize a zero or non-finite vector");
  // Vectors already unit to rounding are kept as given, so normalizing twice
  // (e.g. a save/load round trip) changes nothing.
  v_ = std::abs(n - 1.0) <= 4 * std::numeric_limits<double>::epsilon() ? v : Eigen::VectorXd(v / n);
}

UnitVector::UnitVector(std::initializer_list<double> coords)
    : UnitVector(Eigen::Map<const Eigen::VectorXd>(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

UnitVector UnitVector::axis(int dim, int axis) {
  if (dim < 2 || axis < 0 || axis >= dim) throw InvalidArgument("axis index out of range");
  return UnitVector(Eigen::VectorXd::Unit(dim, axis), Trusted{});
}

UnitVector UnitVector::operator-() const { return UnitVector(Eigen::VectorXd(-v_), Trusted{}); }

bool SphericalCap::contains(const UnitVector& p, double tol) const {
  return geodesic_distance(center, p) <= radius + tol;
}

double safe_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

double geodesic_distance(const UnitVector& p, const UnitVector& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("geodesic_distance: dimensions differ");
  // Same angle as arccos <p, q>, without its loss of precision near 0 and pi.
  return 2.0 * std::atan2((p.vec() - q.vec()).norm(), (p.vec() + q.vec()).norm());
}

namespace {

void require_same_dim(std::span<const UnitVector> points, const char* who) {
  for (const auto& p : points) {
    if (p.dim() != points.front().dim())
      throw DimensionMismatch(std::string(who) + ": mixed dimensions");
  }
}

Eigen::MatrixXd gram(std::span<const UnitVector> points, std::span<const std::size_t> idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) g(i, j) = g(j, i) = points[idx[i]].dot(points[idx[j]]);
  return g;
}

// Nearest point of conv(points) to the origin (Wolfe's algorithm).
// Returns barycentric weights over the final corral.
struct NearestPoint {
  Eigen::VectorXd x;
  std::vector<std::size_t> corral;
};

NearestPoint min_norm_point(std::span<const UnitVector> points) {
  const double tol = 1e-12;
  const int d = points.front().dim();
  std::vector<std::size_t> s{0};
  std::vector<double> lambda{1.0};
  Eigen::VectorXd x = points[0].vec();

  for (int major = 0; major < 1000; ++major) {
    std::size_t j = 0;
    double best = x.dot(points[0].vec());
    for (std::size_t i = 1; i < points.size(); ++i) {
      const double v = x.dot(points[i].vec());
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (x.squaredNorm() - best <= tol || std::find(s.begin(), s.end(), j) != s.end()) break;
    if (static_cast<int>(s.size()) > d) break;
    s.push_back(j);
    lambda.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      // Affine minimizer over the corral: [G 1; 1' 0][a; mu] = [0; 1].
      const auto k = static_cast<Eigen::Index>(s.size());
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k + 1, k + 1);
      m.topLeftCorner(k, k) = gram(points, s);
      m.block(0, k, k, 1).setOnes();
      m.block(k, 0, 1, k).setOnes();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
      rhs[k] = 1.0;
      const Eigen::VectorXd sol = m.fullPivLu().solve(rhs);
      const Eigen::VectorXd alpha = sol.head(k);
      if ((alpha.array() > tol).all()) {
        for (Eigen::Index i = 0; i < k; ++i) lambda[i] = alpha[i];
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < k; ++i) {
        if (alpha[i] <= tol) theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
      }
      for (Eigen::Index i = 0; i < k; ++i) lambda[i] += theta * (alpha[i] - lambda[i]);
      std::vector<std::size_t> ns;
      std::vector<double> nl;
      for (Eigen::Index i = 0; i < k; ++i) {
        if (lambda[i] > tol) {
          ns.push_back(s[i]);
          nl.push_back(lambda[i]);
        }
      }
      s = std::move(ns);
      lambda = std::move(nl);
    }
    x.setZero(d);
    for (std::size_t i = 0; i < s.size(); ++i) x += lambda[i] * points[s[i]].vec();
  }
  return {x, s};
}

}  // namespace

bool in_open_hemisphere(std::span<const UnitVector> points, double tol) {
  if (points.empty()) return true;
  require_same_dim(points, "in_open_hemisphere");
  const int d = points.front().dim();
  // maximize t s.t. <c, p_i> - t >= 0, |c_j| <= 1, t <= 1.
  lp::Problem prob(d + 1);
  prob.free_var.assign(d + 1, true);
  prob.objective.assign(d + 1, 0.0);
  prob.objective[d] = 1.0;
  for (const auto& p : points) {
    std::vector<double> row(d + 1);
    for (int j = 0; j < d; ++j) row[j] = p[j];
    row[d] = -1.0;
    prob.add(std::move(row), lp::Sense::kGreaterEqual, 0.0);
  }
  for (int j = 0; j < d; ++j) {
    std::vector<double> row(d + 1, 0.0);
    row[j] = 1.0;
    prob.add(row, lp::Sense::kLessEqual, 1.0);
    prob.add(row, lp::Sense::kGreaterEqual, -1.0);
  }
  std::vector<double> cap(d + 1, 0.0);
  cap[d] = 1.0;
  prob.add(std::move(cap), lp::Sense::kLessEqual, 1.0);
  const auto res = lp::solve(prob);
  return res.status == lp::Status::kOptimal && res.objective > tol;
}

Circumcircle circumcenter(std::span<const UnitVector> points) {
  if (points.size() < 2) throw InvalidArgument("circumcenter needs at least two points");
  require_same_dim(points, "circumcenter");
  const int d = points.front().dim();
  if (static_cast<int>(points.size()) > d)
    throw InvalidArgument("circumcenter accepts at most d points");
  if (!in_open_hemisphere(points))
    throw NoHemisphere("circumcenter: points do not lie in an open hemisphere");

  std::vector<std::size_t> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const Eigen::MatrixXd g = gram(points, idx);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  const auto& sv = svd.singularValues();
  if (sv[sv.size() - 1] < 1e-12 * sv[0])
    throw DegenerateInput("circumcenter: points are linearly dependent");
  const Eigen::VectorXd alpha = g.ldlt().solve(Eigen::VectorXd::Ones(g.rows()));
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
  for (std::size_t i = 0; i < points.size(); ++i) c += alpha[i] * points[i].vec();
  UnitVector center(c);
  return {center, geodesic_distance(center, points.front())};
}

EnclosingCap min_enclosing_cap(std::span<const UnitVector> points) {
  if (points.empty()) throw InvalidArgument("min_enclosing_cap: empty input");
  require_same_dim(points, "min_enclosing_cap");
  if (points.size() == 1) return {{points[0], 0.0}, {0}};
  if (!in_open_hemisphere(points))
    throw NoHemisphere("min_enclosing_cap: points do not lie in an open hemisphere");

  // max_c min_i <c, p_i> equals the distance from the origin to conv(P).
  auto nearest = min_norm_point(points);
  UnitVector center(nearest.x);
  double radius = 0.0;
  for (const auto& p : points) radius = std::max(radius, geodesic_distance(center, p));
  std::sort(nearest.corral.begin(), nearest.corral.end());
  return {{center, radius}, nearest.corral};
}

double angular_diameter(std::span<const UnitVector> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, geodesic_distance(points[i], points[j]));
  return best;
}

UnitVector random_unit_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  } while (v.norm() < 1e-12);
  return UnitVector(v);
}

Eigen::MatrixXd random_orthogonal(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

UnitVector rotate(const Eigen::MatrixXd& q, const UnitVector& p) {
  if (q.cols() != p.dim()) throw DimensionMismatch("rotate: matrix and vector sizes differ");
  return UnitVector(Eigen::VectorXd(q * p.vec()));
}

PointSet rotate(const Eigen::MatrixXd& q, std::span<const UnitVector> points) {
  PointSet out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(rotate(q, p));
  return out;
}

}  // namespace antipodal
