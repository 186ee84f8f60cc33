// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include <json.hpp>

#include "accrete/harness.hpp"
#include "helpers.hpp"

using namespace accrete;

TEST_CASE("report formats") {
  VerificationReport r;
  r.suite = "demo";
  r.seed = 42;
  r.add({"good", true, 1e-9, 1e-8, CheckKind::kOracle, ""});
  r.add({"bad", false, NAN, 1.0, CheckKind::kProperty, "note"});
  CHECK_FALSE(r.passed());
  CHECK(r.failures() == 1);
  const auto j = nlohmann::json::parse(r.json());
  CHECK(j["seed"] == 42);
  CHECK(j["passed"] == false);
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][0]["kind"] == "oracle");
  CHECK(j["checks"][1]["measured"] == "nan");
  const std::string t = r.text();
  CHECK(t.find("PASS good") != std::string::npos);
  CHECK(t.find("FAIL bad") != std::string::npos);
  CHECK(t.find("seed 42") != std::string::npos);
}

TEST_CASE("check names are unique") {
  for (const VerificationReport& r :
       {verify_hypotheses(MaterialParams{}, 3),
        verify_eikonal({{33, 65}, 4, 3})}) {
    std::set<std::string> names;
    for (const Check& c : r.checks)
      CHECK(names.insert(c.name).second);
  }
}

TEST_CASE("reports are reproducible from their seed") {
  MaterialParams m;
  m.kappa = 5.0;
  CHECK(verify_hypotheses(m, 99).json() == verify_hypotheses(m, 99).json());
  CHECK(verify_hypotheses(m, 99).json() != verify_hypotheses(m, 100).json());
}

TEST_CASE("eikonal suite with a size override") {
  const VerificationReport r = verify_eikonal({{33, 65}, 4, 5});
  int per_size = 0;
  for (const Check& c : r.checks)
    if (c.name.find("constant speed matches the distance") != std::string::npos)
      ++per_size;
  CHECK(per_size == 2);
  for (const Check& c : r.checks)
    if (c.kind != CheckKind::kMonitor)
      CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("equilibrium suite on a coarse grid") {
  const VerificationReport r = verify_equilibrium(test::small_config(4));
  for (const Check& c : r.checks)
    CHECK_MESSAGE(c.passed, c.name);
}
