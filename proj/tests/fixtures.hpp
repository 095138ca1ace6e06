#pragma once

#include <numbers>

#include "lagbound/surface_geom.hpp"

namespace fixtures {

inline const double kTwoPi = 2 * std::numbers::pi;

inline lagbound::PatchPtr cylinder() {
  static const auto p = lagbound::solve_warp(lagbound::flat_cylinder_base(kTwoPi), 1.0);
  return p;
}
inline lagbound::PatchPtr wide_cylinder() {
  static const auto p = lagbound::solve_warp(lagbound::flat_cylinder_base(kTwoPi), std::numbers::pi);
  return p;
}
inline lagbound::PatchPtr plane() {
  static const auto p = lagbound::solve_warp(lagbound::plane_circle_base(2.0), 1.0);
  return p;
}
inline lagbound::PatchPtr sphere() {
  static const auto p = lagbound::solve_warp(lagbound::sphere_equator_base(), 1.0);
  return p;
}
inline lagbound::PatchPtr hyperbolic() {
  static const auto p = lagbound::solve_warp(lagbound::hyperbolic_band_base(kTwoPi), 1.0);
  return p;
}

}  // namespace fixtures
