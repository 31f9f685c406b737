// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(RACKRAY_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("rackray_cli_" + name); }

}  // namespace

TEST_CASE("list-scenarios prints the ten presets") {
  const Result r = run("list-scenarios");
  CHECK(r.code == 0);
  int lines = 0;
  std::istringstream is(r.out);
  for (std::string line; std::getline(is, line);) ++lines;
  CHECK(lines == 10);
  CHECK(r.out.find("fig4 ") != std::string::npos);
  CHECK(r.out.find("fig13") != std::string::npos);
}

TEST_CASE("small custom run writes CSV to stdout") {
  const Result r = run("simulate --tx 11,4,1.5 --grid-spacing 2 --launch-rays 2000 --max-reflections 1 --band-samples 2");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x_m,y_m,z_m,power_dbm,path_count,safe\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 11 * 4);
}

TEST_CASE("files are written") {
  const fs::path csv = temp_file("out.csv"), ppm = temp_file("out.ppm");
  const Result r = run("simulate --scenario fig9 --grid-spacing 4 --launch-rays 1000 --max-reflections 1 --diffraction off --out-csv " +
                       csv.string() + " --out-ppm " + ppm.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(fs::file_size(csv) > 40);
  CHECK(fs::file_size(ppm) == 11 + 6 * 2 * 3);
  fs::remove(csv);
  fs::remove(ppm);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run("simulate").code == 2);  // custom without --tx
  CHECK(run("simulate --scenario fig99").code == 2);
  CHECK(run("simulate --tx 1,2").code == 2);
  CHECK(run("simulate --tx 1.5,1.5,1.0").code == 2);  // inside a rack
  CHECK(run("simulate --scenario fig4 --tx-pol diagonal").code == 2);
  CHECK(run("simulate --scenario fig4 --diffraction maybe").code == 2);
  CHECK(run("simulate --scenario fig4 --scale -40:-110").code == 2);
  CHECK(run("simulate --scenario fig4 --band-samples 0").code == 2);
  CHECK(run("bogus").code == 2);

  const fs::path json = temp_file("scene.json");
  std::ofstream(json) << R"({"preset": "paper-default", "rack_colour": "red"})";
  CHECK(run("simulate --scenario fig4 --scene " + json.string()).code == 2);
  fs::remove(json);
}

TEST_CASE("i/o errors exit with 1") {
  CHECK(run("simulate --scene /nonexistent/scene.json --scenario fig4").code == 1);
  CHECK(run("simulate --scenario fig9 --grid-spacing 4 --launch-rays 1000 --max-reflections 1 --out-csv /nonexistent-dir/a.csv")
            .code == 1);
}
