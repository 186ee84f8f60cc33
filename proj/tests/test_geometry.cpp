// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "accrete/errors.hpp"
#include "accrete/geometry.hpp"
#include "helpers.hpp"

using namespace accrete;
using accrete::test::disk_domain;

TEST_CASE("grid layout and flags") {
  const Grid g = build_grid(disk_domain(), 65);
  CHECK(g.nx() == 65);
  CHECK(g.ny() == 65);
  CHECK(g.h() == doctest::Approx(1.0 / 64));
  CHECK(g.index(3, 2) == 2 * 65 + 3);
  CHECK(g.point(g.index(64, 64)).x() == doctest::Approx(1.0));

  int body = 0;
  for (int n = 0; n < g.size(); ++n) {
    CHECK_FALSE((g.in_omega0(n) && g.is_boundary(n)));
    if (g.in_anchor(n))
      CHECK(g.in_omega0(n));
    body += g.in_omega0(n);
  }
  CHECK(body == g.count(kOmega0));
  CHECK(g.count(kAnchor) > 0);
  CHECK(g.count(kBoundary) == 4 * 64);
}

TEST_CASE("quadrature weights integrate the container") {
  const Grid g = build_grid(disk_domain(0.03), 33);
  double area = 0.0;
  for (int n = 0; n < g.size(); ++n)
    area += g.quadrature_weight(n) * g.h() * g.h();
  CHECK(area == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.quadrature_weight(0) == 0.25);
  CHECK(g.quadrature_weight(1) == 0.5);
  CHECK(g.quadrature_weight(g.index(5, 5)) == 1.0);
}

TEST_CASE("stencils are exact on affine fields") {
  const Grid g = build_grid(disk_domain(0.03), 33);
  std::mt19937_64 r(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat2 M = test::random_matrix(r, 2.0);
    const Vec2 b(test::uniform(r, -1, 1), test::uniform(r, -1, 1));
    VectorField y(g.size());
    for (int n = 0; n < g.size(); ++n)
      y[n] = M * g.point(n) + b;
    for (auto closure :
         {BoundaryClosure::kSecondOrder, BoundaryClosure::kSummationByParts}) {
      const auto grad = gradient(y, g, closure);
      double err = 0.0;
      for (const Mat2& F : grad)
        err = std::max(err, (F - M).lpNorm<Eigen::Infinity>());
      CHECK(err <= 1e-12);
    }
    double hmax = 0.0;
    for (const Tensor3& H : hessian(y, g))
      hmax = std::max(hmax, H.norm());
    CHECK(hmax <= 1e-9);
  }
}

TEST_CASE("second-order stencils are exact on quadratics") {
  const Grid g = build_grid(disk_domain(0.03), 33);
  VectorField y(g.size());
  for (int n = 0; n < g.size(); ++n) {
    const Vec2 x = g.point(n);
    y[n] = Vec2(x.x() * x.x() + 3 * x.x() * x.y(), x.y() * x.y());
  }
  const auto grad = gradient(y, g);
  const auto hess = hessian(y, g);
  double gerr = 0.0, herr = 0.0;
  for (int n = 0; n < g.size(); ++n) {
    const Vec2 x = g.point(n);
    Mat2 exact;
    exact << 2 * x.x() + 3 * x.y(), 3 * x.x(), 0, 2 * x.y();
    gerr = std::max(gerr, (grad[n] - exact).lpNorm<Eigen::Infinity>());
    Tensor3 he;
    he(0, 0, 0) = 2;
    he(0, 0, 1) = he(0, 1, 0) = 3;
    he(1, 1, 1) = 2;
    herr = std::max(herr, (hess[n] - he).norm());
  }
  CHECK(gerr <= 1e-11);
  CHECK(herr <= 1e-8);
}

TEST_CASE("summation-by-parts closure annihilates fields vanishing on the boundary") {
  const Grid g = build_grid(disk_domain(0.03), 33);
  const DifferenceOperators ops(g, BoundaryClosure::kSummationByParts);
  VectorField y(g.size());
  for (int n = 0; n < g.size(); ++n) {
    const Vec2 x = g.point(n);
    const double bump = std::sin(M_PI * x.x()) * std::sin(M_PI * x.y());
    y[n] = Vec2(bump * std::exp(x.x()), bump * x.y() * x.y());
  }
  for (int n = 0; n < g.size(); ++n)
    if (g.is_boundary(n))
      y[n] = Vec2::Zero();
  Mat2 total = Mat2::Zero();
  for (int n = 0; n < g.size(); ++n)
    total += g.quadrature_weight(n) * ops.gradient_at(y, n);
  CHECK(total.lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("containment gate") {
  DomainSpec d = disk_domain();
  const double h = 1.0 / 64;
  // gap 0.4 against C_gamma T + 2h
  d.final_time = 0.4 - 2 * h - 1e-3;
  CHECK_NOTHROW(build_grid(d, 65));
  d.final_time = 0.4 - 2 * h + 1e-3;
  CHECK_THROWS_AS(build_grid(d, 65), ConfigError);
  try {
    build_grid(d, 65);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("(H15)") != std::string::npos);
  }
}

TEST_CASE("domain gates") {
  DomainSpec d = disk_domain();
  d.anchor.shapes = {Disk{{0.5, 0.5}, 0.2}};
  CHECK_THROWS_AS(build_grid(d, 65), ConfigError);
  d = disk_domain();
  d.omega0.shapes.clear();
  CHECK_THROWS_AS(build_grid(d, 65), ConfigError);
  d = disk_domain();
  d.c_gamma = 2.0;
  CHECK_THROWS_AS(build_grid(d, 65), ConfigError);
}

TEST_CASE("region distances") {
  Region disk;
  disk.shapes = {Disk{{0.5, 0.5}, 0.1}};
  CHECK(disk.distance({0.5, 0.8}) == doctest::Approx(0.2));
  CHECK(disk.distance({0.5, 0.55}) == 0.0);
  CHECK(disk.depth({0.5, 0.5}) == doctest::Approx(0.1));
  CHECK(disk.distance_to_box_boundary(1, 1) == doctest::Approx(0.4));

  Polygon square{{{0.2, 0.2}, {0.4, 0.2}, {0.4, 0.4}, {0.2, 0.4}}};
  CHECK(contains(square, {0.3, 0.3}));
  CHECK_FALSE(contains(square, {0.5, 0.3}));
  CHECK(distance(square, {0.5, 0.3}) == doctest::Approx(0.1));
  CHECK(distance(square, {0.5, 0.5}) == doctest::Approx(std::sqrt(0.02)));

  Region both;
  both.shapes = {Disk{{0.7, 0.7}, 0.05}, square};
  CHECK(both.contains({0.3, 0.3}));
  CHECK(both.contains({0.7, 0.72}));
  CHECK(both.distance({0.7, 0.8}) == doctest::Approx(0.05));
}

TEST_CASE("mask distance tracks the exact disk distance") {
  const Grid g = build_grid(disk_domain(), 65);
  const NodeMask body = g.mask(kOmega0);
  for (Vec2 x : {Vec2(0.9, 0.5), Vec2(0.1, 0.2), Vec2(0.5, 0.95)}) {
    const double exact = dist_to_region(x, g.spec().omega0);
    CHECK(std::abs(dist_to_region(x, body, g) - exact) <= g.h());
  }
  CHECK(dist_to_region(Vec2(0.5, 0.5), body, g) == 0.0);
  CHECK_THROWS_AS(dist_to_region(Vec2(0.5, 0.5), NodeMask(g.size(), 0), g),
                  std::invalid_argument);
}

TEST_CASE("boundary samples lie on the shapes") {
  Region r;
  r.shapes = {Disk{{0.5, 0.5}, 0.1}};
  const auto pts = r.boundary_samples(0.01);
  CHECK(pts.size() >= 63);
  CHECK(pts.back() == Vec2(0.5, 0.5));
  for (size_t k = 0; k + 1 < pts.size(); ++k)
    CHECK((pts[k] - Vec2(0.5, 0.5)).norm() == doctest::Approx(0.1));
}
