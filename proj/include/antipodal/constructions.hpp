#pragma once

// Explicit antipodal configurations and the orthogonal join.

#include <string>

#include "antipodal/covering.hpp"

namespace antipodal {

// {±e_1, ..., ±e_d}; covering radius arccos(sqrt(1/d)).
AntipodalConfig cross_polytope_config(int d);

// Regular k-gon on S^1 (k even, k >= 4); covering radius pi/k.
AntipodalConfig regular_polygon_config(int k);

// Two regular hexagons in totally orthogonal planes of E^4.
AntipodalConfig hexagon_pair_config();

// Left occupies coordinates 0..k-1, right occupies k..k+l-1.
AntipodalConfig orthogonal_join(const AntipodalConfig& left, const AntipodalConfig& right);

// Covering radius of the join of two factors with covering radii r_left and
// r_right inside their own subspheres:
//   cos x = cos r_left cos r_right / sqrt(cos^2 r_left + cos^2 r_right).
// The farthest point cos(t) u + sin(t) v balances the two factor distances.
double join_covering_radius(double r_left, double r_right);

// Optimized S^2 factor configurations shipped under data/ ("s2-8pairs",
// "s2-16pairs").
AntipodalConfig shipped_config(const std::string& name);
std::string shipped_config_path(const std::string& name);

}  // namespace antipodal
