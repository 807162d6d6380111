#pragma once

// X-ray and illumination bounds for body classes from antipodal coverings.
// A class whose faces have Gauss images inside caps of radius r, together
// with 2m antipodal points of covering radius R, gives X <= m whenever
// r + R <= pi/2, and then I <= 2m.

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "antipodal/covering.hpp"

namespace antipodal {

enum class BodyKind { kAlmostSmooth, kConstantWidth };

std::string to_string(BodyKind kind);
// Accepts "almost_smooth" and "constant_width".
BodyKind parse_body_kind(const std::string& name);

struct BodyClass {
  BodyKind kind;
  int dim;  // >= 3
};

// Throws InvalidArgument for d < 3.
BodyClass make_body_class(BodyKind kind, int d);

// Radius of the smallest cap holding any face Gauss image of the class.
double jung_radius(int d);             // arccos sqrt((d-1)/d)
double constant_width_radius(int d);   // arccos sqrt((d+1)/(2d))
double class_radius(const BodyClass& body);

// 5 d sqrt(d) (4 + ln d) (3/2)^(d/2), an illumination bound for constant
// width bodies; reported for comparison only.
double schramm_bound(int d);

struct CoveringCertificate {
  BodyClass body_class{BodyKind::kAlmostSmooth, 3};
  std::size_t m = 0;
  double covering_radius = 0.0;  // R
  RadiusMethod radius_method = RadiusMethod::kExact;
  double sampling_bound = 0.0;   // added to R before the margin when sampled
  double class_radius = 0.0;     // r
  double threshold = 0.0;        // pi/2
  double margin = 0.0;           // pi/2 - (r + R [+ sampling_bound])
  bool valid = false;            // margin >= -1e-9
  bool tight = false;            // |margin| <= 1e-9
  std::size_t xray_bound = 0;          // X <= m
  std::size_t illumination_bound = 0;  // I <= 2m
  std::string config_reference;
  std::vector<std::string> notes;
};

inline constexpr double kCertificateTolerance = 1e-9;

// Throws DimensionMismatch or NotAntipodal.
CoveringCertificate certify(const BodyClass& body, const AntipodalConfig& config,
                            const std::string& config_reference = "", std::size_t fallback_samples = 1'000'000,
                            std::uint64_t seed = 1);

nlohmann::json certificate_to_json(const CoveringCertificate& cert, const AntipodalConfig& config);

}  // namespace antipodal
