// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "accrete/eikonal.hpp"
#include "helpers.hpp"

using namespace accrete;
using accrete::test::disk_domain;

namespace {

SpeedField wavy(const Grid& g, std::mt19937_64& r) {
  const double a = test::uniform(r, 1, 6), b = test::uniform(r, 1, 6);
  SpeedField s;
  s.c_gamma = 0.5;
  s.C_gamma = 1.0;
  for (int n = 0; n < g.size(); ++n) {
    const Vec2 x = g.point(n);
    s.values.push_back(0.75 + 0.25 * std::sin(a * x.x()) * std::cos(b * x.y()));
  }
  return s;
}

}  // namespace

TEST_CASE("constant speed gives the scaled distance to the disk") {
  for (int size : {33, 65, 129}) {
    const Grid g = build_grid(disk_domain(size < 65 ? 0.03 : 0.05), size);
    const ThetaField t = solve_fmm(SpeedField::constant(g, 1.0), g);
    double err = 0.0;
    for (int n = 0; n < g.size(); ++n) {
      const double exact =
          std::max(0.0, (g.point(n) - Vec2(0.5, 0.5)).norm() - 0.1);
      err = std::max(err, std::abs(t[n] - exact));
      if (g.in_omega0(n))
        CHECK(t[n] == 0.0);
    }
    CHECK(err <= 2 * g.h());
  }
}

TEST_CASE("acceptance order is causal and covers the grid") {
  const Grid g = build_grid(disk_domain(), 65);
  std::mt19937_64 r(5);
  const ThetaField t = solve_fmm(wavy(g, r), g);
  CHECK(static_cast<int>(t.accepted_order.size()) == g.size());
  for (size_t k = 1; k < t.accepted_order.size(); ++k)
    CHECK(t[t.accepted_order[k - 1]] <= t[t.accepted_order[k]]);
}

TEST_CASE("solver is deterministic") {
  const Grid g = build_grid(disk_domain(), 65);
  std::mt19937_64 r(9);
  const SpeedField s = wavy(g, r);
  const ThetaField a = solve_fmm(s, g), b = solve_fmm(s, g);
  CHECK(a.values == b.values);
  CHECK(a.accepted_order == b.accepted_order);
}

TEST_CASE("faster speed arrives no later") {
  const Grid g = build_grid(disk_domain(), 65);
  std::mt19937_64 r(13);
  const SpeedField s = wavy(g, r);
  SpeedField f = s;
  for (double& v : f.values)
    v = std::min(1.0, v * 1.2);
  const ThetaField a = solve_fmm(s, g), b = solve_fmm(f, g);
  for (int n = 0; n < g.size(); ++n)
    CHECK(b[n] <= a[n]);
}

TEST_CASE("fast marching stays within a few cells of the path oracle") {
  const Grid g = build_grid(disk_domain(), 65);
  std::mt19937_64 r(17);
  for (int k = 0; k < 3; ++k) {
    const SpeedField s = wavy(g, r);
    const ThetaField a = solve_fmm(s, g), b = dijkstra_oracle(s, g);
    CHECK(sup_distance(a, b) <= 2 * g.h());
    CHECK(sup_distance(a, b) / b.max() <= 0.05);
  }
}

TEST_CASE("path oracle metric is within 3% of Euclidean") {
  DomainSpec d = disk_domain();
  const int n = 65;
  const double h = 1.0 / (n - 1);
  d.omega0.shapes = {Disk{{0.5, 0.5}, 0.25 * h}};
  d.anchor.shapes = {Disk{{0.5, 0.5}, 0.1 * h}};
  const Grid g(d, n, n, h);
  const ThetaField t = dijkstra_oracle(SpeedField::constant(g, 1.0), g);
  for (int k = 0; k < g.size(); ++k) {
    const double e = (g.point(k) - Vec2(0.5, 0.5)).norm();
    if (e < 0.5 * h)
      continue;
    CHECK(t[k] >= e * (1 - 1e-12));
    CHECK(t[k] <= 1.03 * e);
  }
}

TEST_CASE("bound report") {
  const Grid g = build_grid(disk_domain(), 65);
  std::mt19937_64 r(19);
  ThetaField t = solve_fmm(wavy(g, r), g);
  const BoundReport ok = check_bounds(t, g, 0.5, 1.0);
  CHECK(ok.ok());
  CHECK(ok.checked_gradient_nodes > 1000);
  CHECK(ok.distance_tolerance == doctest::Approx(3 * g.h() / 0.5));

  const int victim = g.index(60, 32);
  t.values[victim] = 10.0;
  const BoundReport bad = check_bounds(t, g, 0.5, 1.0);
  CHECK_FALSE(bad.ok());
  CHECK(bad.distance_violations >= 1);
  CHECK(std::find(bad.flagged_nodes.begin(), bad.flagged_nodes.end(),
                  victim) != bad.flagged_nodes.end());
  CHECK_FALSE(bad.summary().empty());
}

TEST_CASE("sublevel sets are nested") {
  const Grid g = build_grid(disk_domain(), 65);
  std::mt19937_64 r(23);
  const ThetaField t = solve_fmm(wavy(g, r), g);
  const NodeMask a = sublevel(t, 0.05), b = sublevel(t, 0.1),
                 c = sublevel(t, 0.25);
  for (int n = 0; n < g.size(); ++n) {
    if (a[n])
      CHECK(b[n]);
    if (b[n])
      CHECK(c[n]);
  }
}

TEST_CASE("speed fields outside the bounds are rejected") {
  const Grid g = build_grid(disk_domain(0.03), 33);
  SpeedField s = SpeedField::constant(g, 1.0);
  s.c_gamma = 0.5;
  CHECK_NOTHROW(s.check(g));
  s.values[100] = 1.5;
  CHECK_THROWS_AS(s.check(g), std::invalid_argument);
  s.values.pop_back();
  CHECK_THROWS_AS(s.check(g), std::invalid_argument);
}

TEST_CASE("upwind gradient of a constant-speed solve is close to one") {
  const Grid g = build_grid(disk_domain(), 129);
  const ThetaField t = solve_fmm(SpeedField::constant(g, 1.0), g);
  const int n = g.index(100, 70);
  CHECK(upwind_gradient_norm(t, g, n) == doctest::Approx(1.0).epsilon(0.02));
}
