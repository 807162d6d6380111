#pragma once

// Covering radius of finite point sets on S^(d-1) and the antipodal
// configurations the rest of the toolkit works with.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antipodal/sphere.hpp"

namespace antipodal {

// m base points standing for the 2m points {p_i, -p_i}.
class AntipodalConfig {
 public:
  // Throws if dimensions disagree or two of the 2m points coincide (1e-9).
  AntipodalConfig(int dim, PointSet base_points, std::string provenance = "constructed");

  int dim() const { return dim_; }
  std::size_t pairs() const { return base_.size(); }
  const PointSet& base_points() const { return base_; }
  // p_1, -p_1, p_2, -p_2, ...
  PointSet expanded() const;

  const std::optional<double>& covering_radius() const { return radius_; }
  void set_covering_radius(std::optional<double> r) { radius_ = r; }
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

 private:
  int dim_;
  PointSet base_;
  std::optional<double> radius_;
  std::string provenance_;
};

enum class RadiusMethod { kExact, kSampled };

struct CoveringRadiusResult {
  double radius;
  UnitVector witness;  // a farthest point of the sphere from the set
  RadiusMethod method;
  // Sampled results only: the true radius is at most radius + sampling_bound
  // with probability >= 0.999 (zero for exact results).
  double sampling_bound = 0.0;
  std::size_t samples = 0;
};

// Farthest-point distance via hull facets. Requires the origin inside the
// hull of the points (on its boundary the radius is pi/2); throws
// OriginNotInterior when the points lie in an open hemisphere.
CoveringRadiusResult covering_radius_exact(std::span<const UnitVector> points);
CoveringRadiusResult covering_radius_exact(const AntipodalConfig& config);

// Lower bound from seeded uniform samples; deterministic given the seed.
CoveringRadiusResult covering_radius_sampled(std::span<const UnitVector> points, std::size_t sample_count,
                                             std::uint64_t seed);
CoveringRadiusResult covering_radius_sampled(const AntipodalConfig& config, std::size_t sample_count,
                                             std::uint64_t seed);

// Exact when the origin is interior, sampled otherwise.
CoveringRadiusResult covering_radius(const AntipodalConfig& config, std::size_t fallback_samples = 1'000'000,
                                     std::uint64_t seed = 1);

// True iff the set is closed under negation within 1e-9.
bool verify_antipodal(std::span<const UnitVector> points, double tol = 1e-9);

// Fraction of S^(dim-1) covered by a cap of angular radius rho.
double cap_fraction(int dim, double rho);

// Radius delta such that n uniform samples form a delta-net of S^(dim-1)
// with probability >= 1 - failure.
double sample_net_radius(int dim, std::size_t n, double failure = 1e-3);

}  // namespace antipodal
