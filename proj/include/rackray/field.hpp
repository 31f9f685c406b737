// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "rackray/antenna.hpp"
#include "rackray/materials.hpp"
#include "rackray/scene.hpp"
#include "rackray/tracer.hpp"

namespace rackray {

/// Gaussian UWB pulse spectrum sampled uniformly over [fc - B/2, fc + B/2].
struct Waveform {
  double center_freq = 3.994e9;
  double bandwidth = 468e6;
  int band_samples = 16;

  void validate() const;
  /// (frequency, weight) pairs. The Gaussian power weight is calibrated so the
  /// spectrum is 10 dB down at fc +/- B/2.
  std::vector<std::pair<double, double>> samples() const;
};

struct ComplexFieldGain {
  Complex value;  // voltage transfer ratio of one path at one frequency
  double delay = 0.0;
};

struct LinkBudget {
  double tx_power_dbm = 0.0;
  double sensitivity_dbm = -106.0;
  double max_safe_path_loss_db = 85.0;
};

/// Right-angle (or general) conducting wedge in edge-fixed coordinates.
struct WedgeGeometry {
  Vec3 edge_dir;
  Vec3 face0_normal;
  Vec3 facen_normal;
  double n = 1.5;  // exterior angle / pi

  static WedgeGeometry from_edge(const Edge& edge) { return {edge.direction, edge.face0_normal, edge.facen_normal, 1.5}; }

  /// Angle of direction `d` (pointing away from the edge) measured from face 0
  /// through the exterior, clamped to [0, n pi].
  double exterior_angle(const Vec3& d) const;
};

struct UtdCoefficients {
  Complex d_soft;
  Complex d_hard;
};

/// Transition function F(x) = 2j sqrt(x) e^{jx} int_{sqrt x}^inf e^{-j t^2} dt,
/// from the rational approximation of the auxiliary Fresnel functions.
Complex fresnel_transition(double x);

/// Wedge diffraction coefficients for a point source at distance s_in from the
/// diffraction point and an observer at s_out. incident_dir points toward
/// the edge, diffracted_dir away from it. Throws std::invalid_argument when the
/// directions violate the Keller cone by more than 1e-6 rad.
UtdCoefficients utd_coefficients(const WedgeGeometry& wedge, const Vec3& incident_dir, const Vec3& diffracted_dir,
                                 double s_in, double s_out, double frequency);

// Throws std::invalid_argument for frequency <= 0 or a zero-length path.
ComplexFieldGain path_complex_gain(const Scene& scene, const PropagationPath& path, const Antenna& tx,
                                   const Antenna& rx, double frequency);

inline constexpr double kNoSignalDbm = -std::numeric_limits<double>::infinity();

double coherent_power_dbm(std::span<const ComplexFieldGain> gains, double tx_power_dbm);

double coherent_receive_power(const Scene& scene, std::span<const PropagationPath> paths, const Antenna& tx,
                              const Antenna& rx, double frequency);

double band_averaged_power(const Scene& scene, std::span<const PropagationPath> paths, const Antenna& tx,
                           const Antenna& rx, const Waveform& waveform);

struct PathLoss {
  double pl_db = 0.0;
  bool safe = false;
};

PathLoss path_loss(double received_dbm, const LinkBudget& budget);

}  // namespace rackray
