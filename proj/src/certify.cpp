#include "antipodal/certify.hpp"

#include <cmath>

#include "antipodal/config_io.hpp"
#include "antipodal/errors.hpp"
#include "antipodal/manifest.hpp"

namespace antipodal {

std::string to_string(BodyKind kind) {
  return kind == BodyKind::kAlmostSmooth ? "almost_smooth" : "constant_width";
}

BodyKind parse_body_kind(const std::string& name) {
  if (name == "almost_smooth") return BodyKind::kAlmostSmooth;
  if (name == "constant_width") return BodyKind::kConstantWidth;
  throw InvalidArgument("unknown body class '" + name + "' (expected almost_smooth or constant_width)");
}

BodyClass make_body_class(BodyKind kind, int d) {
  if (d < 3) throw InvalidArgument("body classes are defined for d >= 3");
  return {kind, d};
}

namespace {
void require_dim(int d) {
  if (d < 3) throw InvalidArgument("dimension must be >= 3");
}
}  // namespace

double jung_radius(int d) {
  require_dim(d);
  return std::acos(std::sqrt((d - 1.0) / d));
}

double constant_width_radius(int d) {
  require_dim(d);
  return std::acos(std::sqrt((d + 1.0) / (2.0 * d)));
}

double class_radius(const BodyClass& body) {
  return body.kind == BodyKind::kAlmostSmooth ? jung_radius(body.dim) : constant_width_radius(body.dim);
}

double schramm_bound(int d) {
  require_dim(d);
  const double dd = d;
  return 5.0 * dd * std::sqrt(dd) * (4.0 + std::log(dd)) * std::pow(1.5, dd / 2.0);
}

CoveringCertificate certify(const BodyClass& body, const AntipodalConfig& config, const std::string& config_reference,
                            std::size_t fallback_samples, std::uint64_t seed) {
  if (body.dim < 3) throw InvalidArgument("body classes are defined for d >= 3");
  if (config.dim() != body.dim)
    throw DimensionMismatch("certify: configuration lives in E^" + std::to_string(config.dim()) +
                            " but the class is in E^" + std::to_string(body.dim));
  const auto pts = config.expanded();
  if (!verify_antipodal(pts)) throw NotAntipodal("certify: configuration is not antipodal");

  const auto radius = covering_radius(config, fallback_samples, seed);
  CoveringCertificate c;
  c.body_class = body;
  c.m = config.pairs();
  c.covering_radius = radius.radius;
  c.radius_method = radius.method;
  c.sampling_bound = radius.method == RadiusMethod::kSampled ? radius.sampling_bound : 0.0;
  c.class_radius = class_radius(body);
  c.threshold = kPi / 2;
  c.margin = c.threshold - (c.class_radius + c.covering_radius + c.sampling_bound);
  c.valid = c.margin >= -kCertificateTolerance;
  c.tight = std::abs(c.margin) <= kCertificateTolerance;
  c.xray_bound = c.m;
  c.illumination_bound = 2 * c.m;
  c.config_reference = config_reference.empty() ? config.provenance() : config_reference;

  if (!c.valid) c.notes.push_back("r + R exceeds pi/2: no bound follows from this configuration");
  if (c.valid && c.tight)
    c.notes.push_back(
        "tight: r + R = pi/2 within tolerance; the bound holds because a generic rotation of the m great "
        "spheres avoids the finitely many positions where a sphere touches a face Gauss image");
  if (radius.method == RadiusMethod::kSampled)
    c.notes.push_back("covering radius sampled; margin reduced by the sampling bound");
  if (c.valid && body.kind == BodyKind::kConstantWidth && body.dim >= 5 && c.m == (std::size_t{1} << (body.dim - 1)))
    c.notes.push_back("X <= 2^(d-1) and I <= 2^d; a bound of the form X <= 2^d for this class is the illumination bound");
  return c;
}

nlohmann::json certificate_to_json(const CoveringCertificate& c, const AntipodalConfig& config) {
  return {{"body_class", {{"kind", to_string(c.body_class.kind)}, {"dim", c.body_class.dim}}},
          {"m", c.m},
          {"covering_radius_rad", c.covering_radius},
          {"radius_method", c.radius_method == RadiusMethod::kExact ? "exact" : "sampled"},
          {"sampling_bound_rad", c.sampling_bound},
          {"class_radius_rad", c.class_radius},
          {"threshold_rad", c.threshold},
          {"margin_rad", c.margin},
          {"valid", c.valid},
          {"tight", c.tight},
          {"conclusion_xray", c.xray_bound},
          {"conclusion_illumination", c.illumination_bound},
          {"config_reference", c.config_reference},
          {"config_hash", json_hash(config_to_json(config))},
          {"toolkit_version", kToolkitVersion},
          {"notes", c.notes}};
}

}  // namespace antipodal
