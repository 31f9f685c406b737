// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include "rackray/scene.hpp"

namespace rackray {

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;

/// Reflection coefficients in the ray-fixed basis: r_perp multiplies the
/// E component normal to the plane of incidence, r_par the in-plane
/// component (reflected basis vector e_perp x k_reflected). Time convention
/// e^{+jwt}. A PEC gives r_perp = -1, r_par = +1.
struct ReflectionCoeffs {
  Complex r_perp;
  Complex r_par;
  double theta_i = 0.0;
  double frequency = 0.0;
};

struct RoughnessContext {
  double dh = 0.0;
  double lambda0 = 1.0;
  double theta_i = 0.0;
};

/// Complex relative permittivity eps_r - j sigma / (w eps0).
Complex complex_permittivity(const Material& material, double frequency);

// Throws std::domain_error unless 0 <= theta_i < pi/2 and frequency > 0.
ReflectionCoeffs fresnel_coefficients(const Material& material, double theta_i, double frequency);

/// Coherent specular attenuation of a Gaussian rough surface,
/// exp(-8 (pi dh cos(theta_i) / lambda0)^2).
double roughness_factor(const RoughnessContext& ctx);

/// Fresnel coefficients scaled by the roughness factor of material.roughness_dh.
ReflectionCoeffs effective_reflection(const Material& material, double theta_i, double frequency);

}  // namespace rackray
