// SPDX-License-Identifier: Apache-2.0
#include "rackray/materials.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rackray {

Complex complex_permittivity(const Material& material, double frequency) {
  const double omega = 2.0 * std::numbers::pi * frequency;
  return {material.eps_r, -material.sigma / (omega * kVacuumPermittivity)};
}

ReflectionCoeffs fresnel_coefficients(const Material& material, double theta_i, double frequency) {
  if (!(theta_i >= 0.0 && theta_i < std::numbers::pi / 2)) {
    throw std::domain_error("fresnel_coefficients: incidence angle must be in [0, pi/2)");
  }
  if (!(frequency > 0.0)) {
    throw std::domain_error("fresnel_coefficients: frequency must be positive");
  }
  ReflectionCoeffs out;
  out.theta_i = theta_i;
  out.frequency = frequency;
  if (material.kind == MaterialKind::Pec) {
    out.r_perp = -1.0;
    out.r_par = 1.0;
    return out;
  }
  const Complex eps = complex_permittivity(material, frequency);
  const double c = std::cos(theta_i);
  const double s = std::sin(theta_i);
  const Complex root = std::sqrt(eps - s * s);
  out.r_perp = (c - root) / (c + root);
  out.r_par = (eps * c - root) / (eps * c + root);
  return out;
}

double roughness_factor(const RoughnessContext& ctx) {
  const double g = std::numbers::pi * ctx.dh * std::cos(ctx.theta_i) / ctx.lambda0;
  return std::exp(-8.0 * g * g);
}

ReflectionCoeffs effective_reflection(const Material& material, double theta_i, double frequency) {
  ReflectionCoeffs out = fresnel_coefficients(material, theta_i, frequency);
  if (material.roughness_dh == 0.0) {
    return out;
  }
  const double rho = roughness_factor({material.roughness_dh, kSpeedOfLight / frequency, theta_i});
  out.r_perp *= rho;
  out.r_par *= rho;
  return out;
}

}  // namespace rackray
