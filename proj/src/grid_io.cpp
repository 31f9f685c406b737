// SPDX-License-Identifier: Apache-2.0
#include "rackray/grid_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "rackray/errors.hpp"

namespace rackray {

namespace {

std::array<unsigned char, 3> colormap(double power, const ColorScale& scale) {
  const double t = std::clamp((power - scale.min_dbm) / (scale.max_dbm - scale.min_dbm), 0.0, 1.0);
  auto byte = [](double v) { return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  if (t < 0.5) {
    return {0, byte(2 * t), byte(1 - 2 * t)};
  }
  return {byte(2 * t - 1), byte(2 - 2 * t), 0};
}

template <class Write>
void write_file(const std::filesystem::path& path, Write&& write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_grid_csv(const CoverageGrid& grid, std::ostream& out) {
  out << "x_m,y_m,z_m,power_dbm,path_count,safe\n";
  char line[160];
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const GridCell& c = grid.at(i, j);
      if (c.excluded) continue;
      const Vec3 p = grid.cell_center(i, j);
      char power[32];
      if (std::isfinite(c.power_dbm)) {
        std::snprintf(power, sizeof power, "%.2f", c.power_dbm);
      } else {
        std::snprintf(power, sizeof power, "-inf");
      }
      std::snprintf(line, sizeof line, "%.3f,%.3f,%.3f,%s,%d,%d\n", p.x, p.y, p.z, power, c.path_count,
                    c.safe ? 1 : 0);
      out << line;
    }
  }
}

void write_grid_csv(const CoverageGrid& grid, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_grid_csv(grid, out); });
}

void write_heatmap(const CoverageGrid& grid, std::ostream& out, const ColorScale& scale) {
  if (!(scale.min_dbm < scale.max_dbm)) throw ConfigError("heatmap scale needs min < max");
  out << "P6\n" << grid.nx << ' ' << grid.ny << "\n255\n";
  std::vector<unsigned char> pixels;
  pixels.reserve(grid.cells.size() * 3);
  for (const GridCell& c : grid.cells) {
    std::array<unsigned char, 3> rgb{0, 0, 0};
    if (!c.excluded) {
      rgb = std::isfinite(c.power_dbm) ? colormap(c.power_dbm, scale) : std::array<unsigned char, 3>{64, 64, 64};
    }
    pixels.insert(pixels.end(), rgb.begin(), rgb.end());
  }
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

void write_heatmap(const CoverageGrid& grid, const std::filesystem::path& path, const ColorScale& scale) {
  write_file(path, [&](std::ostream& out) { write_heatmap(grid, out, scale); });
}

}  // namespace rackray
