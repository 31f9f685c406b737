// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "rackray/geom.hpp"

namespace rackray {

enum class Polarization { Vertical, HorizontalX, HorizontalY };

Vec3 polarization_axis(Polarization pol);
std::string_view to_string(Polarization pol);
// Throws std::invalid_argument for names other than vertical|horizontal-x|horizontal-y.
Polarization parse_polarization(std::string_view name);

/// Dipole-like antenna with pattern G0 |sin(theta)|^n about its axis.
struct Antenna {
  Vec3 position;
  Vec3 axis{0, 0, 1};
  double boresight_gain_dbi = 3.0;
  double e_plane_hpbw_deg = 60.0;
  double tx_power_dbm = 0.0;
  double sensitivity_dbm = -106.0;

  static Antenna at(const Vec3& position, Polarization pol) {
    Antenna a;
    a.position = position;
    a.axis = polarization_axis(pol);
    return a;
  }
};

struct PatternSample {
  double gain_linear = 0.0;
  Vec3 pol_vector;
};

/// Exponent n with sin(90deg - hpbw/2)^n = 1/2.
double pattern_exponent(double e_plane_hpbw_deg);

double pattern_gain(const Antenna& ant, const Vec3& direction);

// Throws std::domain_error in the pattern null (|axis x direction| < 1e-9).
Vec3 polarization_vector(const Antenna& ant, const Vec3& direction);

PatternSample sample_pattern(const Antenna& ant, const Vec3& direction);

}  // namespace rackray
