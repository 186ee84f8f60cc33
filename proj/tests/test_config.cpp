// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "accrete/config.hpp"
#include "accrete/errors.hpp"
#include "helpers.hpp"

using namespace accrete;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("resolved text reproduces the config") {
  RunConfig c = reference_config();
  c.domain.omega0 = parse_region("polygon(0.4 0.4, 0.6 0.4, 0.6 0.6, 0.4 0.6)");
  c.y0 = InitialBump{Vec2(0.01, -0.02), Vec2(0.75, 0.5), 0.1};
  c.a0 << 1.05, 0.01, 0.0, 0.97;
  c.output.steps = {2, 4};
  c.coupling.on_step_failure = StepFailurePolicy::kContinue;
  c.solver.tol_el = 3.3e-8;
  const std::string text = to_ini(c);
  const RunConfig back = parse_config(text);
  CHECK(to_ini(back) == text);
  CHECK(back.solver.tol_el == c.solver.tol_el);
  CHECK(back.a0 == c.a0);
  CHECK(back.output.steps == c.output.steps);
}

TEST_CASE("missing keys take reference values") {
  const RunConfig c = parse_config("[material]\nkappa = 2\n");
  CHECK(c.material.kappa == 2.0);
  CHECK(c.resolution == reference_config().resolution);
  CHECK(to_ini(parse_config("")) == to_ini(reference_config()));
}

TEST_CASE("load-time gates name the problem") {
  CHECK(error_of("[material]\np = 4\nq = 3\n").find("(H6)") !=
        std::string::npos);
  CHECK(error_of("[material]\ndelta = 1.5\n").find("delta") !=
        std::string::npos);
  CHECK(error_of("[domain]\nfinal_time = 2\n").find("(H15)") !=
        std::string::npos);
  CHECK(error_of("[material]\nc_gamma = 2\n") != "");
  CHECK(error_of("[material]\nbogus = 1\n").find("bogus") != std::string::npos);
  CHECK(error_of("[nosuch]\nkey = 1\n") != "");
  CHECK(error_of("[material]\nkappa = fast\n").find("kappa") !=
        std::string::npos);
  CHECK(error_of("[initial]\na0 = matrix(-1, 0, 0, 1)\n") != "");
  CHECK(error_of("[discretization]\nresolution = 5\n") != "");
  CHECK(error_of("[solver]\non_step_failure = retry\n") != "");
  CHECK(error_of("[output]\ntrajectory_steps = 99\n") != "");
}

TEST_CASE("validation can be deferred") {
  const RunConfig c = parse_config("[material]\nq = 3\n", false);
  CHECK(c.material.q == 3.0);
  CHECK_THROWS_AS(validate_config(c), ConfigError);
}

TEST_CASE("single-key updates revalidate") {
  RunConfig c = reference_config();
  set_config_value(c, "solver.threads", "4");
  CHECK(c.solver.threads == 4);
  CHECK_THROWS_AS(set_config_value(c, "material.q", "3"), ConfigError);
  CHECK(c.material.q == 5.0);
  CHECK_THROWS_AS(set_config_value(c, "threads", "2"), ConfigError);
  set_config_value(c, "material.q", "3", false);
  CHECK(c.material.q == 3.0);
}

TEST_CASE("regions") {
  const Region d = parse_region("disk(0.5, 0.5, 0.1)");
  CHECK(d.shapes.size() == 1);
  CHECK(d.describe() == "disk(0.5, 0.5, 0.1)");
  const Region u = parse_region("disk(0.3, 0.3, 0.05) polygon(0 0, 1 0, 0 1)");
  CHECK(u.shapes.size() == 2);
  CHECK(parse_region(u.describe()).describe() == u.describe());
  CHECK_THROWS_AS(parse_region("square(1)"), ConfigError);
  CHECK_THROWS_AS(parse_region("polygon(0 0, 1 1)"), ConfigError);
}

TEST_CASE("initial bump") {
  const InitialBump b{Vec2(0.01, 0.0), Vec2(0.5, 0.5), 0.2};
  CHECK_FALSE(b.is_identity());
  CHECK(b(Vec2(0.5, 0.5)).x() == doctest::Approx(0.51));
  CHECK(b(Vec2(0.9, 0.5)) == Vec2(0.9, 0.5));
  CHECK(InitialBump{}.is_identity());
  const CoupledProblem p = make_problem([&] {
    RunConfig c = test::small_config(2);
    c.domain.anchor = parse_region("disk(0.5, 0.5, 0.03)");
    c.y0 = InitialBump{Vec2(0.005, 0.0), Vec2(0.6, 0.5), 0.05};
    return c;
  }());
  const int n = p.grid.index(19, 16);
  CHECK(p.y0[n].x() > p.grid.point(n).x());
}

TEST_CASE("entries cover every section") {
  std::set<std::string> sections;
  for (const ConfigEntry& e : config_entries(reference_config()))
    sections.insert(e.section);
  CHECK(sections == std::set<std::string>{"domain", "material",
                                          "discretization", "force", "initial",
                                          "solver", "output", "run"});
}
