#include "antipodal/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "antipodal/errors.hpp"
#include "antipodal/hull.hpp"
#include "antipodal/seeds.hpp"

namespace antipodal {

AntipodalConfig::AntipodalConfig(int dim, PointSet base_points, std::string provenance)
    : dim_(dim), base_(std::move(base_points)), provenance_(std::move(provenance)) {
  if (dim_ < 2) throw InvalidArgument("antipodal config needs dimension >= 2");
  if (base_.empty()) throw InvalidArgument("antipodal config needs at least one point pair");
  for (const auto& p : base_) {
    if (p.dim() != dim_) throw DimensionMismatch("antipodal config: base point dimension differs from config");
  }
  // p_i and -p_j coincide iff |p_i + p_j| small; p_i and p_j iff |p_i - p_j| small.
  for (std::size_t i = 0; i < base_.size(); ++i) {
    for (std::size_t j = i + 1; j < base_.size(); ++j) {
      const auto& a = base_[i].vec();
      const auto& b = base_[j].vec();
      if ((a - b).norm() <= 1e-9 || (a + b).norm() <= 1e-9)
        throw InvalidArgument("antipodal config: points " + std::to_string(i) + " and " + std::to_string(j) +
                              " coincide up to sign");
    }
  }
}

PointSet AntipodalConfig::expanded() const {
  PointSet out;
  out.reserve(2 * base_.size());
  for (const auto& p : base_) {
    out.push_back(p);
    out.push_back(-p);
  }
  return out;
}

CoveringRadiusResult covering_radius_exact(std::span<const UnitVector> points) {
  if (points.empty()) throw InvalidArgument("covering radius of an empty set");
  const int d = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != d) throw DimensionMismatch("covering_radius_exact: mixed dimensions");
  }
  // With the origin on the boundary of the hull some closed hemisphere holds
  // every point and none is open, so the radius is exactly pi/2.
  auto boundary_case = [&](const Eigen::VectorXd& normal) -> CoveringRadiusResult {
    if (in_open_hemisphere(points))
      throw OriginNotInterior("origin is outside the hull; use covering_radius_sampled");
    return {kPi / 2, UnitVector(normal), RadiusMethod::kExact, 0.0, 0};
  };
  std::optional<ConvexHull> hull;
  try {
    hull.emplace(points);
  } catch (const DegenerateInput&) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(points.size()), d);
    for (std::size_t i = 0; i < points.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = points[i].vec().transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    // The last right singular vector is orthogonal to the (linear) span.
    const auto& sv = svd.singularValues();
    const Eigen::Index rank = (sv.array() > 1e-9 * sv[0]).count();
    if (rank == d)
      throw OriginNotInterior("exact covering radius needs the origin inside a full-dimensional hull; "
                              "use covering_radius_sampled");
    return boundary_case(svd.matrixV().col(d - 1));
  }
  const auto& planes = hull->planes();
  std::size_t best = 0;
  for (std::size_t i = 1; i < planes.size(); ++i) {
    if (planes[i].offset < planes[best].offset) best = i;
  }
  if (planes[best].offset < -1e-10)
    throw OriginNotInterior("origin is outside the hull; use covering_radius_sampled");
  if (planes[best].offset <= 1e-10) return boundary_case(planes[best].normal);
  return {safe_acos(planes[best].offset), UnitVector(planes[best].normal), RadiusMethod::kExact, 0.0, 0};
}

CoveringRadiusResult covering_radius_exact(const AntipodalConfig& config) {
  const auto pts = config.expanded();
  return covering_radius_exact(pts);
}

namespace {

struct BlockBest {
  double max_dot = std::numeric_limits<double>::infinity();  // minimized
  Eigen::VectorXd sample;
};

BlockBest sample_block(const Eigen::MatrixXd& pts, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto d = pts.rows();
  Eigen::VectorXd s(d);
  BlockBest best;
  for (std::size_t i = 0; i < count; ++i) {
    for (Eigen::Index c = 0; c < d; ++c) s[c] = normal(rng);
    const double n = s.norm();
    if (n < 1e-300) continue;
    s /= n;
    const double m = (pts.transpose() * s).maxCoeff();
    if (m < best.max_dot) {
      best.max_dot = m;
      best.sample = s;
    }
  }
  return best;
}

}  // namespace

CoveringRadiusResult covering_radius_sampled(std::span<const UnitVector> points, std::size_t sample_count,
                                             std::uint64_t seed) {
  if (points.empty()) throw InvalidArgument("covering radius of an empty set");
  if (sample_count < 1) throw InvalidArgument("covering_radius_sampled: sample_count must be >= 1");
  const int d = points.front().dim();
  Eigen::MatrixXd pts(d, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].dim() != d) throw DimensionMismatch("covering_radius_sampled: mixed dimensions");
    pts.col(static_cast<Eigen::Index>(j)) = points[j].vec();
  }

  constexpr std::size_t kBlock = 1 << 16;
  const std::size_t blocks = (sample_count + kBlock - 1) / kBlock;
  std::vector<BlockBest> results(blocks);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(blocks, std::thread::hardware_concurrency()));
  auto run = [&](std::size_t w) {
    for (std::size_t b = w; b < blocks; b += workers) {
      const std::size_t count = std::min(kBlock, sample_count - b * kBlock);
      results[b] = sample_block(pts, count, derive_seed(seed, b));
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  // Lowest block index wins ties, so the merge does not depend on scheduling.
  std::size_t best = 0;
  for (std::size_t b = 1; b < blocks; ++b) {
    if (results[b].max_dot < results[best].max_dot) best = b;
  }
  return {safe_acos(results[best].max_dot), UnitVector(results[best].sample), RadiusMethod::kSampled,
          sample_net_radius(d, sample_count), sample_count};
}

CoveringRadiusResult covering_radius_sampled(const AntipodalConfig& config, std::size_t sample_count,
                                             std::uint64_t seed) {
  const auto pts = config.expanded();
  return covering_radius_sampled(pts, sample_count, seed);
}

CoveringRadiusResult covering_radius(const AntipodalConfig& config, std::size_t fallback_samples,
                                     std::uint64_t seed) {
  try {
    return covering_radius_exact(config);
  } catch (const OriginNotInterior&) {
    return covering_radius_sampled(config, fallback_samples, seed);
  }
}

bool verify_antipodal(std::span<const UnitVector> points, double tol) {
  if (points.empty()) return false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool paired = false;
    for (std::size_t j = 0; j < points.size() && !paired; ++j) {
      if (j != i && points[j].dim() == points[i].dim() && (points[i].vec() + points[j].vec()).norm() <= tol)
        paired = true;
    }
    if (!paired) return false;
  }
  return true;
}

double cap_fraction(int dim, double rho) {
  if (rho <= 0.0) return 0.0;
  if (rho >= kPi) return 1.0;
  // Area of a cap on S^(dim-1) is proportional to the integral of sin^(dim-2).
  auto integral = [dim](double upper) {
    const int n = 2000;
    const double h = upper / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * std::pow(std::sin(i * h), dim - 2);
    }
    return s * h / 3.0;
  };
  return integral(rho) / integral(kPi);
}

double sample_net_radius(int dim, std::size_t n, double failure) {
  // A maximal (delta/2)-separated set Y has at most 1/f(delta/4) members. If
  // every y in Y has a sample within delta/2 the samples form a delta-net;
  // the union bound gives failure <= |Y| (1 - f(delta/2))^n.
  const double nn = static_cast<double>(n);
  auto ok = [&](double delta) {
    const double f2 = cap_fraction(dim, delta / 2);
    const double f4 = cap_fraction(dim, delta / 4);
    return nn * f2 >= std::log(1.0 / f4) + std::log(1.0 / failure);
  };
  if (!ok(kPi)) return kPi;
  double lo = 0.0, hi = kPi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace antipodal
