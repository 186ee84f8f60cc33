// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "accrete/errors.hpp"
#include "accrete/io.hpp"
#include "helpers.hpp"

using namespace accrete;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() /
                     ("accrete-test-" + name + "-" +
                      std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("doubles round-trip through text") {
  std::mt19937_64 r(53);
  for (int k = 0; k < 1000; ++k) {
    const double v = std::ldexp(test::uniform(r, -1, 1), int(r() % 80) - 40);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("csv round trip") {
  const fs::path dir = scratch("csv");
  fs::create_directories(dir);
  Table t;
  t.columns = {"a", "b"};
  t.rows = {{1.0, 1.0 / 3.0}, {-2.5e-17, 4e300}};
  write_csv(dir / "t.csv", t);
  const Table back = read_csv(dir / "t.csv");
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK(back.column("b") == 1);
  CHECK_THROWS_AS(back.column("c"), IoError);
  CHECK_THROWS_AS(read_csv(dir / "missing.csv"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("contours of a cone are closed circles") {
  const int n = 65;
  const double h = 1.0 / (n - 1);
  std::vector<double> v(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      v[j * n + i] = std::hypot(i * h - 0.5, j * h - 0.5);
  for (double level : {0.1, 0.2, 0.3}) {
    const auto lines = level_contours(v, n, n, h, level);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].closed);
    CHECK(lines[0].points.size() > 20);
    for (const Vec2& p : lines[0].points)
      CHECK(std::abs((p - Vec2(0.5, 0.5)).norm() - level) <= h * h * 10);
  }
  CHECK(level_contours(v, n, n, h, 5.0).empty());
}

TEST_CASE("contours leaving the grid are open") {
  const int n = 17;
  const double h = 1.0 / (n - 1);
  std::vector<double> v(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      v[j * n + i] = i * h;
  const auto lines = level_contours(v, n, n, h, 0.53);
  REQUIRE(lines.size() == 1);
  CHECK_FALSE(lines[0].closed);
  CHECK(lines[0].points.size() == static_cast<size_t>(n));
  for (const Vec2& p : lines[0].points)
    CHECK(p.x() == doctest::Approx(0.53));
}

TEST_CASE("saddle cells give two separate contours") {
  // Checkerboard of one cell: diagonal corners high.
  const std::vector<double> v = {1, 0, 0, 1};
  const auto lines = level_contours(v, 2, 2, 1.0, 0.4);
  CHECK(lines.size() == 2);
}

TEST_CASE("vtk header") {
  const fs::path dir = scratch("vtk");
  fs::create_directories(dir);
  write_vtk(dir / "f.vtk", 3, 2, 0.5,
            {{"s", {0, 1, 2, 3, 4, 5}, false},
             {"v", std::vector<double>(12, 1.0), true}});
  const std::string text = slurp(dir / "f.vtk");
  CHECK(text.rfind("# vtk DataFile Version", 0) == 0);
  CHECK(text.find("DATASET STRUCTURED_POINTS") != std::string::npos);
  CHECK(text.find("DIMENSIONS 3 2 1") != std::string::npos);
  CHECK(text.find("SPACING 0.5 0.5") != std::string::npos);
  CHECK(text.find("POINT_DATA 6") != std::string::npos);
  CHECK(text.find("SCALARS s double") != std::string::npos);
  CHECK(text.find("VECTORS v double") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run artifacts and exports") {
  const fs::path dir = scratch("run");
  RunConfig c = test::small_config(2);
  c.output.steps = {1};
  const CoupledProblem p = make_problem(c);
  const CoupledResult r = run_coupled(p);
  write_run(dir, c, p, r);
  for (const std::string& f : run_files())
    CHECK(fs::exists(dir / f));
  CHECK(fs::exists(dir / "y_step_0001.csv"));
  CHECK(fs::exists(dir / "theta.vtk"));

  // The echoed config loads back to the same run.
  CHECK(to_ini(load_config((dir / "config.ini").string())) == to_ini(c));
  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(j["seed"] == c.seed);
  CHECK(j["converged"] == r.report.converged);
  CHECK(j["config"]["material"]["kappa"] == "5");

  const StoredTheta st = read_theta(dir);
  CHECK(st.nx == 33);
  CHECK(st.h == doctest::Approx(p.grid.h()));
  CHECK(st.values == r.state.theta.values);

  const Table ledger = read_csv(dir / "ledger.csv");
  CHECK(static_cast<int>(ledger.rows.size()) ==
        c.n_steps * r.report.iterations);
  const Table conv = read_csv(dir / "convergence.csv");
  CHECK(static_cast<int>(conv.rows.size()) == r.report.iterations);

  const auto fronts = export_run(dir, "fronts");
  REQUIRE(fronts.size() == 1);
  const Table ft = read_csv(fronts[0]);
  std::set<double> times;
  for (const auto& row : ft.rows) {
    times.insert(row[ft.column("time")]);
    CHECK(row[ft.column("closed")] == 1.0);
  }
  CHECK(times.size() == 3);
  CHECK(export_run(dir, "fronts", {0.1}).size() == 1);
  CHECK(export_run(dir, "csv").size() == 1);
  CHECK(export_run(dir, "vtk").size() == 3);
  CHECK_THROWS_AS(export_run(dir, "png"), ConfigError);

  // Identical inputs give identical files.
  const fs::path again = scratch("run2");
  write_run(again, c, p, run_coupled(p));
  for (const std::string& f : run_files())
    CHECK(slurp(dir / f) == slurp(again / f));
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST_CASE("exports name the missing files") {
  const fs::path dir = scratch("empty");
  fs::create_directories(dir);
  try {
    export_run(dir, "vtk");
    FAIL("no error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("theta.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(export_run(dir / "nope", "csv"), IoError);
  fs::remove_all(dir);
}
