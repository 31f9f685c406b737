// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>

#include "rackray/runner.hpp"

namespace rackray {

struct ColorScale {
  double min_dbm = -110.0;
  double max_dbm = -40.0;
};

/// CSV with header x_m,y_m,z_m,power_dbm,path_count,safe; excluded cells are
/// omitted and cells without any path report -inf.
void write_grid_csv(const CoverageGrid& grid, std::ostream& out);
// Throws IoError.
void write_grid_csv(const CoverageGrid& grid, const std::filesystem::path& path);

/// Binary P6 pixmap, one pixel per cell, pixel (0, 0) at the grid origin.
/// Blue (min) -> green -> red (max); excluded cells black, no-signal cells dark gray.
void write_heatmap(const CoverageGrid& grid, std::ostream& out, const ColorScale& scale = {});
// Throws IoError.
void write_heatmap(const CoverageGrid& grid, const std::filesystem::path& path, const ColorScale& scale = {});

}  // namespace rackray
