// SPDX-License-Identifier: Apache-2.0
#include "rackray/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rackray {

namespace {

constexpr double kPi = std::numbers::pi;

struct CVec3 {
  Complex x, y, z;

  static CVec3 from(const Vec3& v) { return {v.x, v.y, v.z}; }
  Complex dot(const Vec3& v) const { return x * v.x + y * v.y + z * v.z; }
};

CVec3 operator*(Complex a, const Vec3& v) { return {a * v.x, a * v.y, a * v.z}; }
CVec3 operator+(const CVec3& a, const CVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }

// Unit vector perpendicular to n, for normal incidence where the plane of
// incidence is undefined.
Vec3 any_perpendicular(const Vec3& n) {
  const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  return normalize(cross(n, helper));
}

CVec3 apply_reflection(const CVec3& e, const Vec3& k_in, const Vec3& k_out, const Vec3& normal,
                       const ReflectionCoeffs& r) {
  const Vec3 c = cross(k_in, normal);
  const Vec3 e_perp = norm(c) > 1e-12 ? normalize(c) : any_perpendicular(normal);
  const Vec3 e_par_in = cross(e_perp, k_in);
  const Vec3 e_par_out = cross(e_perp, k_out);
  return (r.r_perp * e.dot(e_perp)) * e_perp + (r.r_par * e.dot(e_par_in)) * e_par_out;
}

// One of the four cot * F terms, written in terms of the distance eps from
// the associated shadow boundary: cot(eps / 2n) F(2 kL sin^2(eps / 2)).
Complex boundary_term(double eps, double n, double kl) {
  if (std::abs(eps) < 1e-12) {
    return n * std::sqrt(2.0 * kPi * kl) * std::polar(1.0, kPi / 4);
  }
  const double s = std::sin(eps / 2);
  return fresnel_transition(2.0 * kl * s * s) / std::tan(eps / (2.0 * n));
}

// cot((pi + beta)/2n) F(kL a+(beta)) + cot((pi - beta)/2n) F(kL a-(beta))
Complex term_pair(double beta, double n, double kl) {
  const double two_n_pi = 2.0 * n * kPi;
  const double n_plus = std::round((beta + kPi) / two_n_pi);
  const double n_minus = std::round((beta - kPi) / two_n_pi);
  const double eps_plus = kPi + beta - two_n_pi * n_plus;
  const double eps_minus = kPi - beta + two_n_pi * n_minus;
  return boundary_term(eps_plus, n, kl) + boundary_term(eps_minus, n, kl);
}

}  // namespace

void Waveform::validate() const {
  if (!(center_freq > 0.0)) throw std::invalid_argument("waveform: center frequency must be positive");
  if (!(bandwidth >= 0.0)) throw std::invalid_argument("waveform: bandwidth must be >= 0");
  if (band_samples < 1) throw std::invalid_argument("waveform: band_samples must be >= 1");
  if (!(center_freq - bandwidth / 2 > 0.0)) throw std::invalid_argument("waveform: band extends below 0 Hz");
}

std::vector<std::pair<double, double>> Waveform::samples() const {
  validate();
  if (band_samples == 1 || bandwidth == 0.0) {
    return {{center_freq, 1.0}};
  }
  const double half = bandwidth / 2;
  const double sigma = half / std::sqrt(2.0 * std::log(10.0));
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(band_samples));
  for (int k = 0; k < band_samples; ++k) {
    const double f = center_freq - half + bandwidth * k / (band_samples - 1);
    const double d = f - center_freq;
    out.emplace_back(f, std::exp(-d * d / (2 * sigma * sigma)));
  }
  return out;
}

double WedgeGeometry::exterior_angle(const Vec3& d) const {
  const Vec3 t0 = -facen_normal;
  double phi = std::atan2(dot(d, face0_normal), dot(d, t0));
  if (phi < 0.0) phi += 2 * kPi;
  const double limit = n * kPi;
  if (phi > limit) {
    phi = phi > (limit + 2 * kPi) / 2 ? 0.0 : limit;
  }
  return phi;
}

Complex fresnel_transition(double x) {
  if (x <= 0.0) return 0.0;
  const double z = std::sqrt(2.0 * x / kPi);
  const double f = (1.0 + 0.926 * z) / (2.0 + 1.792 * z + 3.104 * z * z);
  const double g = 1.0 / (2.0 + 4.142 * z + 3.492 * z * z + 6.670 * z * z * z);
  return std::sqrt(2.0 * kPi * x) * Complex(f, g);
}

UtdCoefficients utd_coefficients(const WedgeGeometry& wedge, const Vec3& incident_dir, const Vec3& diffracted_dir,
                                 double s_in, double s_out, double frequency) {
  if (!(frequency > 0.0)) throw std::invalid_argument("utd_coefficients: frequency must be positive");
  const double cos_in = dot(incident_dir, wedge.edge_dir);
  const double cos_out = dot(diffracted_dir, wedge.edge_dir);
  if (std::abs(std::acos(std::clamp(cos_in, -1.0, 1.0)) - std::acos(std::clamp(cos_out, -1.0, 1.0))) > 1e-6) {
    throw std::invalid_argument("utd_coefficients: directions violate the Keller cone");
  }
  const double sin_beta = std::sqrt(std::max(0.0, 1.0 - cos_in * cos_in));
  if (sin_beta < 1e-9) return {};

  const double k = 2 * kPi * frequency / kSpeedOfLight;
  const double n = wedge.n;
  const double phi_src = wedge.exterior_angle(-incident_dir);
  const double phi_obs = wedge.exterior_angle(diffracted_dir);
  const double kl = k * s_in * s_out / (s_in + s_out) * sin_beta * sin_beta;

  const Complex pre = -std::polar(1.0, -kPi / 4) / (2.0 * n * std::sqrt(2 * kPi * k) * sin_beta);
  const Complex incident_terms = term_pair(phi_obs - phi_src, n, kl);
  const Complex reflected_terms = term_pair(phi_obs + phi_src, n, kl);
  return {pre * (incident_terms - reflected_terms), pre * (incident_terms + reflected_terms)};
}

ComplexFieldGain path_complex_gain(const Scene& scene, const PropagationPath& path, const Antenna& tx,
                                   const Antenna& rx, double frequency) {
  if (!(frequency > 0.0)) throw std::invalid_argument("path_complex_gain: frequency must be positive");
  if (path.interactions.size() < 2 || !(path.total_length > 0.0)) {
    throw std::invalid_argument("path_complex_gain: zero-length path");
  }
  const auto& it = path.interactions;
  const double lambda = kSpeedOfLight / frequency;
  const double k = 2 * kPi / lambda;
  ComplexFieldGain out{0.0, path.total_length / kSpeedOfLight};

  const Vec3 d_first = normalize(it[1].point - it[0].point);
  const Vec3 d_last = normalize(it[it.size() - 1].point - it[it.size() - 2].point);
  const double g_tx = pattern_gain(tx, d_first);
  const double g_rx = pattern_gain(rx, -d_last);
  if (g_tx <= 0.0 || g_rx <= 0.0 || norm(cross(tx.axis, d_first)) < 1e-9 || norm(cross(rx.axis, d_last)) < 1e-9) {
    return out;
  }

  CVec3 e = CVec3::from(polarization_vector(tx, d_first));
  double spreading = 1.0 / path.total_length;
  double travelled = 0.0;
  for (std::size_t i = 1; i + 1 < it.size(); ++i) {
    const Vec3 k_in = normalize(it[i].point - it[i - 1].point);
    const Vec3 k_out = normalize(it[i + 1].point - it[i].point);
    travelled += distance(it[i].point, it[i - 1].point);
    if (it[i].kind == InteractionKind::Reflection) {
      const Vec3& normal = it[i].axis;
      const double theta = std::acos(std::clamp(-dot(k_in, normal), 0.0, 1.0));
      const ReflectionCoeffs r = effective_reflection(scene.surface_material(it[i].id), theta, frequency);
      e = apply_reflection(e, k_in, k_out, normal, r);
    } else if (it[i].kind == InteractionKind::Diffraction) {
      const Edge& edge = scene.edge(it[i].id);
      const double s_in = travelled;
      const double s_out = path.total_length - travelled;
      const UtdCoefficients d =
          utd_coefficients(WedgeGeometry::from_edge(edge), k_in, k_out, s_in, s_out, frequency);
      const Vec3 phi_in = -normalize(cross(edge.direction, k_in));
      const Vec3 beta_in = cross(k_in, phi_in);
      const Vec3 phi_out = normalize(cross(edge.direction, k_out));
      const Vec3 beta_out = cross(k_out, phi_out);
      e = (-d.d_soft * e.dot(beta_in)) * beta_out + (-d.d_hard * e.dot(phi_in)) * phi_out;
      spreading = std::sqrt(s_in / (s_out * (s_in + s_out))) / s_in;
    }
  }
  const Complex received = e.dot(polarization_vector(rx, -d_last));
  out.value = std::sqrt(g_tx * g_rx) * (lambda / (4 * kPi)) * spreading * std::polar(1.0, -k * path.total_length) *
              received;
  return out;
}

double coherent_power_dbm(std::span<const ComplexFieldGain> gains, double tx_power_dbm) {
  Complex sum = 0.0;
  for (const auto& g : gains) sum += g.value;
  const double p = std::norm(sum);
  return p > 0.0 ? tx_power_dbm + 10.0 * std::log10(p) : kNoSignalDbm;
}

namespace {

double coherent_linear(const Scene& scene, std::span<const PropagationPath> paths, const Antenna& tx,
                       const Antenna& rx, double frequency) {
  Complex sum = 0.0;
  for (const auto& p : paths) sum += path_complex_gain(scene, p, tx, rx, frequency).value;
  return std::norm(sum);
}

}  // namespace

double coherent_receive_power(const Scene& scene, std::span<const PropagationPath> paths, const Antenna& tx,
                              const Antenna& rx, double frequency) {
  const double p = coherent_linear(scene, paths, tx, rx, frequency);
  return p > 0.0 ? tx.tx_power_dbm + 10.0 * std::log10(p) : kNoSignalDbm;
}

double band_averaged_power(const Scene& scene, std::span<const PropagationPath> paths, const Antenna& tx,
                           const Antenna& rx, const Waveform& waveform) {
  if (waveform.band_samples == 1) {
    return coherent_receive_power(scene, paths, tx, rx, waveform.center_freq);
  }
  double acc = 0.0;
  double wsum = 0.0;
  for (const auto& [f, w] : waveform.samples()) {
    acc += w * coherent_linear(scene, paths, tx, rx, f);
    wsum += w;
  }
  const double p = acc / wsum;
  return p > 0.0 ? tx.tx_power_dbm + 10.0 * std::log10(p) : kNoSignalDbm;
}

PathLoss path_loss(double received_dbm, const LinkBudget& budget) {
  const double pl = budget.tx_power_dbm - received_dbm;
  return {pl, pl <= budget.max_safe_path_loss_db && received_dbm >= budget.sensitivity_dbm};
}

}  // namespace rackray
