// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the simulator, one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rackray/field.hpp"
#include "rackray/grid_io.hpp"
#include "rackray/materials.hpp"
#include "rackray/runner.hpp"
#include "rackray/scene.hpp"
#include "rackray/tracer.hpp"

using namespace rackray;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFc = 3.994e9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string csv_of(const CoverageGrid& g) {
  std::ostringstream os;
  write_grid_csv(g, os);
  return os.str();
}

// Full-warehouse runs shared by several criteria.
struct Runs {
  WarehouseParams params;
  Scene scene = build_warehouse(params);
  std::optional<CoverageGrid> fig4, fig6, fig12;
  double fig4_seconds = 0.0;

  const CoverageGrid& get(std::optional<CoverageGrid>& slot, const char* name, int workers = 0) {
    if (!slot) {
      const auto t0 = std::chrono::steady_clock::now();
      slot = run_scenario(scene, *find_preset(name, params), TraceBudget{}, Waveform{}, LinkBudget{}, workers);
      if (std::string(name) == "fig4") fig4_seconds = seconds_since(t0);
    }
    return *slot;
  }
};

Outcome friis() {
  const auto t0 = std::chrono::steady_clock::now();
  const Scene s = Scene::empty();
  const Antenna tx = Antenna::at({0, 0, 0}, Polarization::Vertical);
  double worst = 0.0;
  for (double d : {1.0, 3.0, 10.0, 30.0, 100.0}) {
    const Antenna rx = Antenna::at({d, 0, 0}, Polarization::Vertical);
    const auto paths = trace_paths(s, tx.position, rx.position, TraceBudget{});
    const double p = coherent_receive_power(s, paths, tx, rx, kFc);
    const double fspl = 20 * std::log10(4 * kPi * d * kFc / kSpeedOfLight);
    worst = std::max(worst, std::abs(p - (0.0 - fspl + 6.0)));
  }
  const double t = seconds_since(t0);
  return {worst <= 0.01 && t < 1.0, fmt("max error %.2e dB over 1-100 m, %.2f s", worst, t)};
}

Outcome two_ray() {
  const auto t0 = std::chrono::steady_clock::now();
  const Scene s = Scene::floor_only(Material::pec());
  const double ht = 1.5, hr = 0.2;
  const Antenna tx = Antenna::at({0, 0, ht}, Polarization::Vertical);
  const double k = 2 * kPi * kFc / kSpeedOfLight;
  const double g0 = std::pow(10.0, 0.3);
  const double nexp = std::log(0.5) / std::log(std::cos(kPi / 6));
  // Direct ray plus the image of a vertical dipole in a perfect conductor.
  auto analytic = [&](double d) {
    const double d1 = std::hypot(d, ht - hr), d2 = std::hypot(d, ht + hr);
    const double g1 = g0 * std::pow(d / d1, nexp), g2 = g0 * std::pow(d / d2, nexp);
    const std::complex<double> e = g1 / d1 * std::polar(1.0, -k * d1) + g2 / d2 * std::polar(1.0, -k * d2);
    return 20 * std::log10(kSpeedOfLight / kFc / (4 * kPi)) + 10 * std::log10(std::norm(e));
  };
  std::vector<double> nulls;
  double prev2 = analytic(1.0), prev1 = analytic(1.0005);
  for (double d = 1.001; d <= 50.0; d += 0.0005) {
    const double cur = analytic(d);
    if (prev1 < prev2 && prev1 < cur) nulls.push_back(d - 0.0005);
    prev2 = prev1;
    prev1 = cur;
  }
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < 200; ++i) {
    const double d = 1.0 + 49.0 * i / 199.0;
    if (std::any_of(nulls.begin(), nulls.end(), [&](double n) { return std::abs(n - d) <= 0.05; })) continue;
    const Antenna rx = Antenna::at({d, 0, hr}, Polarization::Vertical);
    const auto paths = trace_paths(s, tx.position, rx.position, TraceBudget{});
    worst = std::max(worst, std::abs(coherent_receive_power(s, paths, tx, rx, kFc) - analytic(d)));
    ++used;
  }
  const double t = seconds_since(t0);
  return {worst <= 0.5 && t < 5.0,
          fmt("max error %.2e dB at %.0f samples (%.0f nulls excluded), %.2f s", worst, used, double(nulls.size()), t)};
}

Outcome roughness() {
  const double lambda = kSpeedOfLight / kFc;
  const double at80 = roughness_factor({0.05, lambda, 80 * kPi / 180});
  const double at0 = roughness_factor({0.05, lambda, 0.0});
  const double flat = roughness_factor({0.0, lambda, 0.7});
  return {std::abs(at80 - 0.348) <= 0.001 && at0 <= 1e-15 && flat == 1.0,
          fmt("80 deg %.6f, normal %.3e, flat %.1f", at80, at0, flat)};
}

Outcome convergence() {
  std::vector<SceneBox> boxes = {{Box{{0, 0, 0.3}, {1.3, 1.3, 2.3}, 0}, 0},
                                 {Box{{2.8, 0.4, 0.3}, {4.1, 1.7, 2.3}, 0}, 0},
                                 {Box{{1.2, 3.0, 0.3}, {2.5, 4.3, 2.3}, 0}, 0}};
  const Scene s({Material::pec(), Material::concrete()}, boxes, FloorSlab{1, 0.3}, Aabb{{-1, -1, -0.3}, {5, 5, 2.3}});
  const std::pair<Vec3, Vec3> links[] = {{{-0.5, 2.0, 1.5}, {4.5, 2.5, 0.2}},
                                         {{2.0, 2.2, 1.2}, {0.6, 0.6, 0.2}},
                                         {{4.6, -0.5, 1.8}, {-0.6, 4.6, 1.0}}};
  TraceBudget coarse, fine;
  coarse.launch_rays = 100000;
  fine.launch_rays = 400000;
  bool same = true;
  double worst_angle = 0.0;
  std::size_t total = 0;
  for (const auto& [tx, rx] : links) {
    std::set<Signature> a, b;
    for (const auto& p : enumerate_specular_paths(s, tx, rx, coarse)) a.insert(p.signature);
    const auto fine_paths = enumerate_specular_paths(s, tx, rx, fine);
    for (const auto& p : fine_paths) b.insert(p.signature);
    same = same && a == b;
    total += b.size();
    for (const auto& p : fine_paths) {
      const auto& it = p.interactions;
      for (std::size_t i = 1; i + 1 < it.size(); ++i) {
        const Vec3 in = normalize(it[i].point - it[i - 1].point);
        const Vec3 out = normalize(it[i + 1].point - it[i].point);
        const double ai = std::acos(std::clamp(-dot(in, it[i].axis), -1.0, 1.0));
        const double ao = std::acos(std::clamp(dot(out, it[i].axis), -1.0, 1.0));
        worst_angle = std::max(worst_angle, std::abs(ai - ao));
      }
    }
  }
  return {same && worst_angle <= 1e-9,
          fmt("%.0f signatures, ", double(total)) + (same ? "100k and 400k sets equal" : "100k and 400k sets DIFFER") +
              fmt(", max specular error %.2e rad", worst_angle)};
}

Outcome utd_continuity() {
  const auto t0 = std::chrono::steady_clock::now();
  const Scene s({Material::pec()}, {{Box{{0, 0, 0.3}, {1.3, 1.3, 2.3}, 0}, 0}}, std::nullopt,
                Aabb{{-3, -3, 0.3}, {4, 4, 2.3}});
  const Vec3 src{-2, 0.5, 1.3};
  const double boundary = std::atan2(-0.5, 2.0);
  TraceBudget b;
  b.max_reflections = 0;
  TraceBudget go = b;
  go.enable_diffraction = false;
  double worst_total = 0.0, worst_go = 0.0;
  for (Polarization pol : {Polarization::Vertical, Polarization::HorizontalY}) {
    const Antenna tx = Antenna::at(src, pol);
    auto field = [&](double a, const TraceBudget& budget) {
      const Antenna rx = Antenna::at({2 * std::cos(a), 2 * std::sin(a), 1.3}, pol);
      std::complex<double> sum = 0.0;
      for (const auto& p : trace_paths(s, tx.position, rx.position, budget)) {
        sum += path_complex_gain(s, p, tx, rx, kFc).value;
      }
      return std::abs(sum);
    };
    const double delta = 1e-6;
    const double lo = field(boundary - delta, b), hi = field(boundary + delta, b);
    worst_total = std::max(worst_total, std::abs(lo - hi) / std::max(lo, hi));
    const double go_lo = field(boundary - delta, go), go_hi = field(boundary + delta, go);
    worst_go = std::max(worst_go, std::abs(go_lo - go_hi) / std::max(go_lo, go_hi));
  }
  const double t = seconds_since(t0);
  return {worst_total <= 0.02 && worst_go >= 0.5 && t < 10.0,
          fmt("total field jump %.3f%%, geometric optics jump %.1f%%, %.2f s", 100 * worst_total, 100 * worst_go, t)};
}

Outcome reciprocity(const Scene& scene) {
  std::mt19937_64 rng(20240601);
  const Aabb& bb = scene.bounds();
  std::uniform_real_distribution<double> ux(bb.lo.x, bb.hi.x), uy(bb.lo.y, bb.hi.y), uz(0.1, 2.6);
  auto sample = [&] {
    Vec3 p;
    do p = {ux(rng), uy(rng), uz(rng)};
    while (scene.inside_solid(p));
    return p;
  };
  double worst = 0.0;
  int silent = 0;
  for (int n = 0; n < 20; ++n) {
    const Vec3 a = sample(), b = sample();
    const Antenna ta = Antenna::at(a, Polarization::Vertical), tb = Antenna::at(b, Polarization::Vertical);
    const double ab = band_averaged_power(scene, trace_paths(scene, a, b, TraceBudget{}), ta, tb, Waveform{});
    const double ba = band_averaged_power(scene, trace_paths(scene, b, a, TraceBudget{}), tb, ta, Waveform{});
    if (std::isinf(ab) || std::isinf(ba)) {
      ++silent;
      if (ab != ba) worst = INFINITY;
      continue;
    }
    worst = std::max(worst, std::abs(ab - ba));
  }
  return {worst <= 1e-6, fmt("max |P(a->b) - P(b->a)| = %.2e dB over 20 pairs (%.0f without paths)", worst, silent)};
}

bool in_rect(const Rect& r, double x, double y) { return x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1; }

std::vector<double> corridor_powers(const CoverageGrid& g, const WarehouseParams& params) {
  const auto corridors = corridor_regions(params);
  std::vector<double> out;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const Vec3 c = g.cell_center(i, j);
      if (g.at(i, j).excluded) continue;
      if (std::any_of(corridors.begin(), corridors.end(), [&](const Rect& r) { return in_rect(r, c.x, c.y); })) {
        out.push_back(g.at(i, j).power_dbm);
      }
    }
  }
  return out;
}

Outcome fig4_regime(Runs& runs) {
  const CoverageGrid& g = runs.get(runs.fig4, "fig4");
  const auto corridor = corridor_powers(g, runs.params);
  const LinkBudget link;
  const auto ok = std::count_if(corridor.begin(), corridor.end(),
                                [&](double p) { return link.tx_power_dbm - p <= 90.0; });
  const double frac = double(ok) / double(corridor.size());

  const Vec3 tx = find_preset("fig4", runs.params)->tx_position;
  std::size_t best = 0;
  for (std::size_t k = 1; k < g.cells.size(); ++k) {
    if (!g.cells[k].excluded && g.cells[k].power_dbm > g.cells[best].power_dbm) best = k;
  }
  const int bi = static_cast<int>(best % static_cast<std::size_t>(g.nx));
  const int bj = static_cast<int>(best / static_cast<std::size_t>(g.nx));
  const Vec3 c = g.cell_center(bi, bj);
  // Cells whose footprint touches the point below the transmitter.
  const bool beneath = std::abs(c.x - tx.x) <= 0.5 * g.spacing + 1e-9 && std::abs(c.y - tx.y) <= 0.5 * g.spacing + 1e-9;
  return {frac >= 0.90 && !beneath,
          fmt("%.1f%% of corridor cells within 90 dB; strongest cell (%.3f, %.3f) at %.2f dBm", 100 * frac, c.x, c.y,
              g.cells[best].power_dbm) +
              (beneath ? " is beneath TX" : " is not beneath TX") + fmt(" (run %.1f s)", runs.fig4_seconds)};
}

int blind_under_racks(const CoverageGrid& g, const Scene& scene) {
  int count = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const Vec3 c = g.cell_center(i, j);
      const bool under = std::any_of(scene.boxes().begin(), scene.boxes().end(), [&](const SceneBox& b) {
        return c.x >= b.box.min_corner.x && c.x <= b.box.max_corner.x && c.y >= b.box.min_corner.y &&
               c.y <= b.box.max_corner.y && c.z < b.box.min_corner.z;
      });
      if (under && !g.at(i, j).excluded && g.at(i, j).power_dbm < -106.0) ++count;
    }
  }
  return count;
}

Outcome polarization_contrast(Runs& runs) {
  const int vv = blind_under_racks(runs.get(runs.fig4, "fig4"), runs.scene);
  const int hh = blind_under_racks(runs.get(runs.fig6, "fig6"), runs.scene);
  return {hh > vv, fmt("sub-rack cells below -106 dBm: HH %.0f, VV %.0f", hh, vv)};
}

Outcome roughness_drop(Runs& runs) {
  const double flat = median(corridor_powers(runs.get(runs.fig4, "fig4"), runs.params));
  const double rough = median(corridor_powers(runs.get(runs.fig12, "fig12"), runs.params));
  const double drop = flat - rough;
  return {drop >= 15.0 && drop <= 30.0,
          fmt("median corridor power %.2f dBm flat, %.2f dBm rough: drop %.2f dB", flat, rough, drop)};
}

Outcome determinism(Runs& runs) {
  const Scenario s = *find_preset("fig4", runs.params);
  const std::string one = csv_of(run_scenario(runs.scene, s, TraceBudget{}, Waveform{}, LinkBudget{}, 1));
  const std::string eight = csv_of(run_scenario(runs.scene, s, TraceBudget{}, Waveform{}, LinkBudget{}, 8));
  return {one == eight && !one.empty(), fmt("1 vs 8 workers: %.0f bytes, ", double(one.size())) +
                                            (one == eight ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  Runs runs;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"friis", friis},
      {"two-ray", two_ray},
      {"roughness factor", roughness},
      {"ray-count convergence", convergence},
      {"UTD continuity", utd_continuity},
      {"reciprocity", [&] { return reciprocity(runs.scene); }},
      {"center TX coverage", [&] { return fig4_regime(runs); }},
      {"polarization blind spots", [&] { return polarization_contrast(runs); }},
      {"roughness corridor drop", [&] { return roughness_drop(runs); }},
      {"worker determinism", [&] { return determinism(runs); }},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2d %-26s %s  %s\n", index++, name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
