// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "accrete/accrete.h"

namespace fs = std::filesystem;

namespace {

const char* kSmall =
    "[discretization]\n"
    "resolution = 33\n"
    "n_steps = 2\n"
    "[domain]\n"
    "anchor = disk(0.5, 0.5, 0.03)\n";

accrete_config* small() {
  accrete_config* c = nullptr;
  REQUIRE(accrete_config_parse(kSmall, 1, &c) == ACCRETE_OK);
  return c;
}

void count_iterates(const accrete_iterate_metrics* m, void* user) {
  auto* seen = static_cast<std::vector<int>*>(user);
  seen->push_back(m->k);
}

}  // namespace

TEST_CASE("version and null handles") {
  CHECK(std::string(accrete_version()).find('.') != std::string::npos);
  CHECK(accrete_config_reference(nullptr) == ACCRETE_INVALID_ARGUMENT);
  CHECK(std::string(accrete_last_error()).find("out") != std::string::npos);
  CHECK(accrete_config_validate(nullptr) == ACCRETE_INVALID_ARGUMENT);
  CHECK(accrete_run_converged(nullptr) == 0);
  CHECK(accrete_report_passed(nullptr) == 0);
  accrete_config_free(nullptr);
  accrete_run_free(nullptr);
  accrete_report_free(nullptr);
  accrete_string_free(nullptr);
}

TEST_CASE("config parse, set and get") {
  accrete_config* c = nullptr;
  CHECK(accrete_config_parse("[material]\nq = 3\n", 1, &c) ==
        ACCRETE_CONFIG_ERROR);
  CHECK(c == nullptr);
  CHECK(std::string(accrete_last_error()).find("(H6)") != std::string::npos);

  REQUIRE(accrete_config_reference(&c) == ACCRETE_OK);
  char* v = nullptr;
  REQUIRE(accrete_config_get(c, "material.kappa", &v) == ACCRETE_OK);
  CHECK(std::string(v) == "5");
  accrete_string_free(v);
  CHECK(accrete_config_set(c, "material.kappa", "2") == ACCRETE_OK);
  REQUIRE(accrete_config_get(c, "material.kappa", &v) == ACCRETE_OK);
  CHECK(std::string(v) == "2");
  accrete_string_free(v);
  CHECK(accrete_config_set(c, "material.q", "3") == ACCRETE_CONFIG_ERROR);
  CHECK(accrete_config_get(c, "material.nope", &v) == ACCRETE_CONFIG_ERROR);

  char* ini = nullptr;
  REQUIRE(accrete_config_to_ini(c, &ini) == ACCRETE_OK);
  accrete_config* back = nullptr;
  REQUIRE(accrete_config_parse(ini, 1, &back) == ACCRETE_OK);
  char* again = nullptr;
  REQUIRE(accrete_config_to_ini(back, &again) == ACCRETE_OK);
  CHECK(std::string(ini) == std::string(again));
  accrete_string_free(ini);
  accrete_string_free(again);
  accrete_config_free(back);
  accrete_config_free(c);

  REQUIRE(accrete_config_parse("[material]\nq = 3\n", 0, &c) == ACCRETE_OK);
  CHECK(accrete_config_validate(c) == ACCRETE_CONFIG_ERROR);
  accrete_config_free(c);
  CHECK(accrete_config_load("/nonexistent/x.ini", 1, &c) != ACCRETE_OK);
}

TEST_CASE("verification reports") {
  accrete_config* c = nullptr;
  REQUIRE(accrete_config_reference(&c) == ACCRETE_OK);
  accrete_report* r = nullptr;
  CHECK(accrete_verify(c, "hypotheses", nullptr, 0, &r) == ACCRETE_OK);
  CHECK(accrete_report_passed(r) == 1);
  CHECK(accrete_report_failures(r) == 0);
  CHECK(std::string(accrete_report_json(r)).find("\"checks\"") !=
        std::string::npos);
  accrete_report_free(r);
  const int sizes[] = {33, 65};
  CHECK(accrete_verify(c, "eikonal", sizes, 2, &r) == ACCRETE_OK);
  accrete_report_free(r);
  CHECK(accrete_verify(c, "bogus", nullptr, 0, &r) == ACCRETE_INVALID_ARGUMENT);
  const int tiny[] = {9};
  CHECK(accrete_verify(c, "eikonal", tiny, 1, &r) != ACCRETE_OK);
  accrete_config_free(c);

  REQUIRE(accrete_config_parse("[material]\nq = 3\n", 0, &c) == ACCRETE_OK);
  CHECK(accrete_verify(c, "hypotheses", nullptr, 0, &r) ==
        ACCRETE_VERIFY_FAILED);
  CHECK(accrete_report_failures(r) > 0);
  CHECK(std::string(accrete_report_text(r)).find("FAIL") != std::string::npos);
  accrete_report_free(r);
  accrete_config_free(c);
}

TEST_CASE("a small run through the library") {
  accrete_config* c = small();
  std::vector<int> seen;
  accrete_run* run = nullptr;
  REQUIRE(accrete_run_coupled(c, count_iterates, &seen, &run) == ACCRETE_OK);
  CHECK(accrete_run_converged(run) == 1);
  CHECK(accrete_run_iterations(run) == static_cast<int>(seen.size()));
  CHECK(seen.front() == 1);

  int nx = 0, ny = 0;
  double h = 0;
  REQUIRE(accrete_run_grid(run, &nx, &ny, &h) == ACCRETE_OK);
  CHECK(nx == 33);
  CHECK(ny == 33);
  CHECK(h == doctest::Approx(1.0 / 32));
  const size_t n = static_cast<size_t>(nx) * ny;
  std::vector<double> theta(n), y(2 * n);
  CHECK(accrete_run_theta(run, theta.data(), n - 1) ==
        ACCRETE_INVALID_ARGUMENT);
  REQUIRE(accrete_run_theta(run, theta.data(), n) == ACCRETE_OK);
  REQUIRE(accrete_run_final_y(run, y.data(), 2 * n) == ACCRETE_OK);
  CHECK(theta[16 * nx + 16] == 0.0);
  CHECK(theta[0] > 0.0);
  // Container corner is fixed.
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 0.0);

  const fs::path dir = fs::temp_directory_path() /
                       ("accrete-capi-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  REQUIRE(accrete_run_write(run, dir.c_str()) == ACCRETE_OK);
  char* list = nullptr;
  CHECK(accrete_export(dir.c_str(), "vtk", nullptr, 0, &list) == ACCRETE_OK);
  CHECK(std::string(list).find("theta.vtk") != std::string::npos);
  accrete_string_free(list);
  const double times[] = {0.1, 0.2};
  CHECK(accrete_export(dir.c_str(), "fronts", times, 2, nullptr) ==
        ACCRETE_OK);
  CHECK(accrete_export(dir.c_str(), "png", nullptr, 0, nullptr) ==
        ACCRETE_CONFIG_ERROR);
  CHECK(accrete_export((dir / "none").c_str(), "csv", nullptr, 0, nullptr) ==
        ACCRETE_IO_ERROR);
  fs::remove_all(dir);
  accrete_run_free(run);
  accrete_config_free(c);
}

TEST_CASE("a run that misses its step tolerance still returns") {
  accrete_config* c = small();
  REQUIRE(accrete_config_set(c, "solver.max_iterations", "1") == ACCRETE_OK);
  accrete_run* run = nullptr;
  CHECK(accrete_run_coupled(c, nullptr, nullptr, &run) ==
        ACCRETE_NONCONVERGED);
  REQUIRE(run != nullptr);
  CHECK(accrete_run_converged(run) == 0);
  CHECK(std::string(accrete_run_message(run)).find("step 1") !=
        std::string::npos);
  accrete_run_free(run);
  accrete_config_free(c);
}
