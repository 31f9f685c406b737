// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rackray/antenna.hpp"
#include "rackray/field.hpp"
#include "rackray/scene.hpp"
#include "rackray/tracer.hpp"

namespace rackray {

struct Scenario {
  std::string name;
  std::string description;
  Vec3 tx_position;
  Polarization tx_polarization = Polarization::Vertical;
  Polarization rx_polarization = Polarization::Vertical;
  double roughness_dh = 0.0;
  double grid_height = 0.2;
  double grid_spacing = 0.25;

  double tx_height() const { return tx_position.z; }
};

struct GridCell {
  double power_dbm = kNoSignalDbm;
  int path_count = 0;
  bool safe = false;
  bool excluded = false;
};

/// Receiver lattice over the scene footprint. Cell (i, j) sits at
/// (x0 + (i + 1/2) spacing, y0 + (j + 1/2) spacing, z); storage is row-major
/// with i (x) fastest.
struct CoverageGrid {
  double x0 = 0.0;
  double y0 = 0.0;
  double z = 0.0;
  double spacing = 0.25;
  int nx = 0;
  int ny = 0;
  std::vector<GridCell> cells;

  Vec3 cell_center(int i, int j) const {
    return {x0 + (i + 0.5) * spacing, y0 + (j + 0.5) * spacing, z};
  }
  const GridCell& at(int i, int j) const { return cells[static_cast<std::size_t>(j * nx + i)]; }
  GridCell& at(int i, int j) { return cells[static_cast<std::size_t>(j * nx + i)]; }
  /// Index pair of the cell whose footprint contains (x, y), clamped to the grid.
  std::pair<int, int> cell_of(double x, double y) const;
};

/// Empty grid covering the scene bounds, with cells inside boxes excluded.
CoverageGrid make_grid(const Scene& scene, double height, double spacing);

// Throws ConfigError.
void validate_scenario(const Scene& scene, const Scenario& scenario);

/// Sweeps every non-excluded cell. workers <= 0 uses the hardware
/// concurrency. Output does not depend on the worker count.
CoverageGrid run_scenario(const Scene& scene, const Scenario& scenario, const TraceBudget& budget,
                          const Waveform& waveform, const LinkBudget& link, int workers = 0);

/// The ten figure presets fig4 ... fig13 for the warehouse built from params.
std::vector<Scenario> scenario_presets(const WarehouseParams& params = {});
std::optional<Scenario> find_preset(std::string_view name, const WarehouseParams& params = {});

}  // namespace rackray
