// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>
#include <string>

#include "rackray/errors.hpp"
#include "rackray/grid_io.hpp"

using namespace rackray;

namespace {

CoverageGrid grid_2x2() {
  CoverageGrid g;
  g.x0 = 0;
  g.y0 = 0;
  g.z = 0.2;
  g.spacing = 0.5;
  g.nx = 2;
  g.ny = 2;
  g.cells = {{-50.126, 3, true, false}, {-95.0, 7, false, false}, {kNoSignalDbm, 0, false, false}, {-70.0, 1, true, false}};
  return g;
}

std::string csv(const CoverageGrid& g) {
  std::ostringstream os;
  write_grid_csv(g, os);
  return os.str();
}

std::string ppm(const CoverageGrid& g, ColorScale s = {}) {
  std::ostringstream os;
  write_heatmap(g, os, s);
  return os.str();
}

}  // namespace

TEST_CASE("grid CSV") {
  const std::string text = csv(grid_2x2());
  CHECK(text ==
        "x_m,y_m,z_m,power_dbm,path_count,safe\n"
        "0.250,0.250,0.200,-50.13,3,1\n"
        "0.750,0.250,0.200,-95.00,7,0\n"
        "0.250,0.750,0.200,-inf,0,0\n"
        "0.750,0.750,0.200,-70.00,1,1\n");
  CoverageGrid g = grid_2x2();
  g.cells[1].excluded = true;
  const std::string without = csv(g);
  CHECK(without.find("0.750,0.250") == std::string::npos);
  CHECK(std::count(without.begin(), without.end(), '\n') == 4);
  CHECK(csv(grid_2x2()) == text);
  CHECK_THROWS_AS(write_grid_csv(g, std::filesystem::path("/nonexistent-dir/x.csv")), IoError);
}

TEST_CASE("heatmap pixmap") {
  CoverageGrid g = grid_2x2();
  SUBCASE("uniform at the maximum is red") {
    for (auto& c : g.cells) c.power_dbm = -40.0;
    const std::string img = ppm(g);
    const std::string header = "P6\n2 2\n255\n";
    REQUIRE(img.size() == header.size() + 12);
    CHECK(img.substr(0, header.size()) == header);
    for (int k = 0; k < 4; ++k) {
      CHECK(static_cast<unsigned char>(img[header.size() + 3 * k]) == 255);
      CHECK(img[header.size() + 3 * k + 1] == 0);
      CHECK(img[header.size() + 3 * k + 2] == 0);
    }
  }
  SUBCASE("minimum is blue, excluded black, no signal gray") {
    g.cells[0].power_dbm = -120.0;
    g.cells[1].excluded = true;
    const std::string img = ppm(g).substr(11);
    CHECK(img.substr(0, 3) == std::string("\0\0\xff", 3));
    CHECK(img.substr(3, 3) == std::string("\0\0\0", 3));
    CHECK(img.substr(6, 3) == std::string("\x40\x40\x40", 3));
  }
  SUBCASE("all excluded is black") {
    for (auto& c : g.cells) c.excluded = true;
    const std::string img = ppm(g).substr(11);
    CHECK(img == std::string(12, '\0'));
  }
  SUBCASE("default warehouse grid gives 88 x 32 pixels") {
    CoverageGrid big;
    big.nx = 88;
    big.ny = 32;
    big.cells.resize(88 * 32);
    const std::string img = ppm(big);
    CHECK(img.rfind("P6\n88 32\n255\n", 0) == 0);
    CHECK(img.size() == 13 + 88 * 32 * 3);
  }
  CHECK_THROWS_AS(ppm(g, {-40, -110}), ConfigError);
  CHECK_THROWS_AS(write_heatmap(g, std::filesystem::path("/nonexistent-dir/x.ppm")), IoError);
}
