// SPDX-License-Identifier: Apache-2.0
//
// rackray command line: run coverage scenarios over the warehouse scene.
//
//   rackray simulate --scenario fig4 --out-csv fig4.csv --out-ppm fig4.ppm
//   rackray list-scenarios
//
// Exit codes: 0 success, 1 I/O error, 2 configuration error.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rackray/errors.hpp"
#include "rackray/grid_io.hpp"
#include "rackray/runner.hpp"
#include "rackray/scene_config.hpp"

namespace {

using namespace rackray;

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;

Vec3 parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--tx expects x,y,z in meters, got '" + text + "'");
    }
  }
  if (v.size() != 3) throw ConfigError("--tx expects x,y,z in meters, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

ColorScale parse_scale(const std::string& text) {
  // Split at the ':' that follows the first number (both bounds may be negative).
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw ConfigError("--scale expects min:max, got '" + text + "'");
  try {
    ColorScale s{std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    if (!(s.min_dbm < s.max_dbm)) throw ConfigError("--scale needs min < max");
    return s;
  } catch (const std::invalid_argument&) {
    throw ConfigError("--scale expects min:max, got '" + text + "'");
  }
}

struct SimulateArgs {
  std::string scene = "preset:paper-default";
  std::string scenario = "custom";
  std::optional<std::string> tx;
  std::optional<std::string> tx_pol;
  std::optional<std::string> rx_pol;
  std::optional<double> grid_height;
  std::optional<double> grid_spacing;
  std::optional<double> roughness_dh;
  int max_reflections = 6;
  std::string diffraction = "on";
  int band_samples = 16;
  int launch_rays = 100000;
  std::string out_csv;
  std::string out_ppm;
  std::string scale = "-110:-40";
  int workers = 0;
};

int run_simulate(const SimulateArgs& a) {
  const WarehouseParams params = load_warehouse(a.scene);
  const Scene scene = build_warehouse(params);

  Scenario sc;
  if (a.scenario == "custom") {
    if (!a.tx) throw ConfigError("--scenario custom requires --tx");
    sc.name = "custom";
  } else {
    auto preset = find_preset(a.scenario, params);
    if (!preset) throw ConfigError("unknown scenario '" + a.scenario + "' (see list-scenarios)");
    sc = *preset;
  }
  if (a.tx) sc.tx_position = parse_point(*a.tx);
  try {
    if (a.tx_pol) sc.tx_polarization = parse_polarization(*a.tx_pol);
    if (a.rx_pol) sc.rx_polarization = parse_polarization(*a.rx_pol);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (a.grid_height) sc.grid_height = *a.grid_height;
  if (a.grid_spacing) sc.grid_spacing = *a.grid_spacing;
  if (a.roughness_dh) sc.roughness_dh = *a.roughness_dh;

  TraceBudget budget;
  budget.max_reflections = a.max_reflections;
  budget.enable_diffraction = a.diffraction == "on";
  budget.launch_rays = a.launch_rays;
  Waveform wf;
  wf.band_samples = a.band_samples;
  const ColorScale scale = parse_scale(a.scale);
  try {
    budget.validate();
    wf.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const auto start = std::chrono::steady_clock::now();
  const CoverageGrid grid = run_scenario(scene, sc, budget, wf, LinkBudget{}, a.workers);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!a.out_csv.empty()) write_grid_csv(grid, a.out_csv);
  if (!a.out_ppm.empty()) write_heatmap(grid, a.out_ppm, scale);
  if (a.out_csv.empty() && a.out_ppm.empty()) write_grid_csv(grid, std::cout);

  int valid = 0, safe = 0;
  for (const auto& c : grid.cells) {
    valid += c.excluded ? 0 : 1;
    safe += c.safe ? 1 : 0;
  }
  std::fprintf(stderr, "%s: %dx%d grid, %d cells, %d safe, %.1f s\n", sc.name.c_str(), grid.nx, grid.ny, valid,
               safe, seconds);
  return 0;
}

int run_list() {
  for (const auto& s : scenario_presets()) {
    std::printf("%-6s tx=(%.2f, %.2f, %.2f) tx-pol=%-12s rx-pol=%-12s dh=%.2f  %s\n", s.name.c_str(),
                s.tx_position.x, s.tx_position.y, s.tx_position.z, std::string(to_string(s.tx_polarization)).c_str(),
                std::string(to_string(s.rx_polarization)).c_str(), s.roughness_dh, s.description.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UWB warehouse coverage ray tracer"};
  app.require_subcommand(1);

  SimulateArgs args;
  auto* sim = app.add_subcommand("simulate", "compute a received-power coverage grid");
  sim->add_option("--scene", args.scene, "scene JSON file or preset:paper-default")->capture_default_str();
  sim->add_option("--scenario", args.scenario, "preset name (fig4..fig13) or custom")->capture_default_str();
  sim->add_option("--tx", args.tx, "transmitter position x,y,z (m)");
  sim->add_option("--tx-pol", args.tx_pol, "vertical|horizontal-x|horizontal-y");
  sim->add_option("--rx-pol", args.rx_pol, "vertical|horizontal-x|horizontal-y");
  sim->add_option("--grid-height", args.grid_height, "receiver grid height (m)");
  sim->add_option("--grid-spacing", args.grid_spacing, "receiver grid spacing (m)");
  sim->add_option("--roughness-dh", args.roughness_dh, "rack wall roughness std. deviation (m)");
  sim->add_option("--max-reflections", args.max_reflections)->capture_default_str();
  sim->add_option("--diffraction", args.diffraction)->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  sim->add_option("--band-samples", args.band_samples)->capture_default_str();
  sim->add_option("--launch-rays", args.launch_rays)->capture_default_str();
  sim->add_option("--out-csv", args.out_csv, "CSV output path");
  sim->add_option("--out-ppm", args.out_ppm, "P6 heatmap output path");
  sim->add_option("--scale", args.scale, "heatmap range min:max in dBm")->capture_default_str();
  sim->add_option("--workers", args.workers, "worker threads (0 = all cores)")->capture_default_str();

  auto* list = app.add_subcommand("list-scenarios", "print the figure presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (list->parsed()) return run_list();
    if (sim->parsed()) return run_simulate(args);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  }
  return 0;
}
