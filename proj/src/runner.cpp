// SPDX-License-Identifier: Apache-2.0
#include "rackray/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "rackray/errors.hpp"

namespace rackray {

std::pair<int, int> CoverageGrid::cell_of(double x, double y) const {
  const int i = std::clamp(static_cast<int>(std::floor((x - x0) / spacing)), 0, nx - 1);
  const int j = std::clamp(static_cast<int>(std::floor((y - y0) / spacing)), 0, ny - 1);
  return {i, j};
}

CoverageGrid make_grid(const Scene& scene, double height, double spacing) {
  if (!(spacing > 0.0)) throw ConfigError("grid spacing must be positive");
  CoverageGrid g;
  const Aabb& b = scene.bounds();
  g.x0 = b.lo.x;
  g.y0 = b.lo.y;
  g.z = height;
  g.spacing = spacing;
  g.nx = std::max(1, static_cast<int>(std::ceil((b.hi.x - b.lo.x) / spacing - 1e-9)));
  g.ny = std::max(1, static_cast<int>(std::ceil((b.hi.y - b.lo.y) / spacing - 1e-9)));
  g.cells.resize(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny));
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      g.at(i, j).excluded = scene.inside_solid(g.cell_center(i, j));
    }
  }
  return g;
}

void validate_scenario(const Scene& scene, const Scenario& s) {
  if (!(s.grid_spacing > 0.0)) throw ConfigError("scenario " + s.name + ": grid spacing must be positive");
  if (scene.floor() && !(s.tx_position.z > 0.0)) {
    throw ConfigError("scenario " + s.name + ": transmitter must be above the floor");
  }
  if (scene.floor() && !(s.grid_height > 0.0)) {
    throw ConfigError("scenario " + s.name + ": grid height must be above the floor");
  }
  if (scene.inside_solid(s.tx_position)) {
    throw ConfigError("scenario " + s.name + ": transmitter is inside a solid box");
  }
  if (!(s.roughness_dh >= 0.0)) throw ConfigError("scenario " + s.name + ": roughness must be >= 0");
}

CoverageGrid run_scenario(const Scene& base_scene, const Scenario& scenario, const TraceBudget& budget,
                          const Waveform& waveform, const LinkBudget& link, int workers) {
  validate_scenario(base_scene, scenario);
  budget.validate();
  waveform.validate();
  const Scene scene = base_scene.with_box_roughness(scenario.roughness_dh);
  CoverageGrid grid = make_grid(scene, scenario.grid_height, scenario.grid_spacing);

  const Aabb region{{grid.x0, grid.y0, grid.z}, {grid.x0 + grid.nx * grid.spacing, grid.y0 + grid.ny * grid.spacing, grid.z}};
  const LaunchTree tree(scene, scenario.tx_position, budget, region);

  Antenna tx = Antenna::at(scenario.tx_position, scenario.tx_polarization);
  tx.tx_power_dbm = link.tx_power_dbm;

  auto compute = [&](std::size_t index) {
    GridCell& cell = grid.cells[index];
    if (cell.excluded) return;
    const int i = static_cast<int>(index % static_cast<std::size_t>(grid.nx));
    const int j = static_cast<int>(index / static_cast<std::size_t>(grid.nx));
    const Vec3 p = grid.cell_center(i, j);
    Antenna rx = Antenna::at(p, scenario.rx_polarization);
    rx.sensitivity_dbm = link.sensitivity_dbm;
    const std::vector<PropagationPath> paths = tree.trace(p);
    cell.power_dbm = band_averaged_power(scene, paths, tx, rx, waveform);
    cell.path_count = static_cast<int>(paths.size());
    cell.safe = path_loss(cell.power_dbm, link).safe;
  };

  const std::size_t count = grid.cells.size();
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) compute(i);
    return grid;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count; i = next++) compute(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return grid;
}

std::vector<Scenario> scenario_presets(const WarehouseParams& params) {
  const Scene scene = build_warehouse(params);
  const Aabb& b = scene.bounds();
  const double cx = 0.5 * (b.lo.x + b.hi.x);
  const double cy = 0.5 * (b.lo.y + b.hi.y);
  const Rect left = cluster_footprints(params).front();
  const Vec3 center{cx, cy, 1.5};
  const Vec3 before_left{left.x0 - 2.0, 0.5 * (left.y0 + left.y1), 1.5};
  const Vec3 center_low{cx, cy, 0.2};

  using P = Polarization;
  auto make = [](std::string name, std::string desc, Vec3 tx, P tp, P rp, double dh) {
    Scenario s;
    s.name = std::move(name);
    s.description = std::move(desc);
    s.tx_position = tx;
    s.tx_polarization = tp;
    s.rx_polarization = rp;
    s.roughness_dh = dh;
    return s;
  };
  return {
      make("fig4", "TX in the middle of the warehouse, all antennas vertical", center, P::Vertical, P::Vertical, 0.0),
      make("fig5", "TX 2 m before the leftmost cluster, all antennas vertical", before_left, P::Vertical, P::Vertical, 0.0),
      make("fig6", "TX and RX horizontal along y", center, P::HorizontalY, P::HorizontalY, 0.0),
      make("fig7", "TX horizontal along y, RX vertical", center, P::HorizontalY, P::Vertical, 0.0),
      make("fig8", "TX vertical, RX horizontal along y", center, P::Vertical, P::HorizontalY, 0.0),
      make("fig9", "lying TX at 0.2 m, TX and RX vertical", center_low, P::Vertical, P::Vertical, 0.0),
      make("fig10", "lying TX at 0.2 m horizontal along x, RX vertical", center_low, P::HorizontalX, P::Vertical, 0.0),
      make("fig11", "lying TX at 0.2 m horizontal along y, RX vertical", center_low, P::HorizontalY, P::Vertical, 0.0),
      make("fig12", "rough rack walls (dh = 5 cm), TX in the middle", center, P::Vertical, P::Vertical, 0.05),
      make("fig13", "rough rack walls (dh = 5 cm), TX before the leftmost cluster", before_left, P::Vertical,
           P::Vertical, 0.05),
  };
}

std::optional<Scenario> find_preset(std::string_view name, const WarehouseParams& params) {
  for (auto& s : scenario_presets(params)) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace rackray
