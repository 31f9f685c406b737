// SPDX-License-Identifier: Apache-2.0
#include "rackray/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rackray {

Vec3 polarization_axis(Polarization pol) {
  switch (pol) {
    case Polarization::Vertical:
      return {0, 0, 1};
    case Polarization::HorizontalX:
      return {1, 0, 0};
    case Polarization::HorizontalY:
      return {0, 1, 0};
  }
  throw std::invalid_argument("unknown polarization");
}

std::string_view to_string(Polarization pol) {
  switch (pol) {
    case Polarization::Vertical:
      return "vertical";
    case Polarization::HorizontalX:
      return "horizontal-x";
    case Polarization::HorizontalY:
      return "horizontal-y";
  }
  return "?";
}

Polarization parse_polarization(std::string_view name) {
  if (name == "vertical") return Polarization::Vertical;
  if (name == "horizontal-x") return Polarization::HorizontalX;
  if (name == "horizontal-y") return Polarization::HorizontalY;
  throw std::invalid_argument("unknown polarization '" + std::string(name) +
                              "' (expected vertical|horizontal-x|horizontal-y)");
}

double pattern_exponent(double e_plane_hpbw_deg) {
  if (!(e_plane_hpbw_deg > 0.0 && e_plane_hpbw_deg < 180.0)) {
    throw std::domain_error("pattern_exponent: beamwidth must be in (0, 180) degrees");
  }
  const double half = e_plane_hpbw_deg * std::numbers::pi / 360.0;
  return std::log(0.5) / std::log(std::cos(half));
}

double pattern_gain(const Antenna& ant, const Vec3& direction) {
  const double g0 = std::pow(10.0, ant.boresight_gain_dbi / 10.0);
  const double s = std::min(1.0, norm(cross(ant.axis, direction)));
  return g0 * std::pow(s, pattern_exponent(ant.e_plane_hpbw_deg));
}

Vec3 polarization_vector(const Antenna& ant, const Vec3& direction) {
  if (norm(cross(ant.axis, direction)) < 1e-9) {
    throw std::domain_error("polarization_vector: direction lies in the pattern null");
  }
  return normalize(ant.axis - direction * dot(ant.axis, direction));
}

PatternSample sample_pattern(const Antenna& ant, const Vec3& direction) {
  return {pattern_gain(ant, direction), polarization_vector(ant, direction)};
}

}  // namespace rackray
