// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "accrete/backstrain.hpp"
#include "accrete/constitutive.hpp"
#include "accrete/errors.hpp"
#include "helpers.hpp"

using namespace accrete;

namespace {

struct Setup {
  Grid grid = build_grid(test::disk_domain(0.03), 33);
  ThetaField theta = solve_fmm(SpeedField::constant(grid, 1.0), grid);
  int steps = 4;
  double tau = grid.spec().final_time / steps;
};

std::vector<Mat2> random_gradients(int n, std::mt19937_64& r) {
  std::vector<Mat2> g(n);
  for (Mat2& F : g)
    F = Mat2::Identity() + test::random_matrix(r, 0.2);
  return g;
}

}  // namespace

TEST_CASE("slab index") {
  CHECK(slab_index(0.0, 0.1, 4) == 0);
  CHECK(slab_index(1e-12, 0.1, 4) == 1);
  CHECK(slab_index(0.1, 0.1, 4) == 1);
  CHECK(slab_index(0.1000001, 0.1, 4) == 2);
  CHECK(slab_index(0.4, 0.1, 4) == 4);
  CHECK(slab_index(0.41, 0.1, 4) == BackstrainField::kNever);
}

TEST_CASE("initial backstrain") {
  Setup s;
  Mat2 a0;
  a0 << 1.1, 0.1, 0.0, 0.95;
  const BackstrainField b = init_backstrain(
      std::vector<Mat2>(s.grid.size(), a0), s.grid, s.theta, s.tau, s.steps);
  for (int n = 0; n < s.grid.size(); ++n) {
    if (s.grid.in_omega0(n)) {
      CHECK(b.at(n) == a0);
      CHECK(b.slab(n) == 0);
      CHECK(b.frozen(n));
    } else {
      CHECK(b.at(n) == Mat2::Identity());
      CHECK_FALSE(b.frozen(n));
    }
  }
  Mat2 flip;
  flip << -1, 0, 0, 1;
  CHECK_THROWS_AS(init_backstrain(std::vector<Mat2>(s.grid.size(), flip),
                                  s.grid, s.theta, s.tau, s.steps),
                  ConfigError);
}

TEST_CASE("each node freezes once, at its own slab") {
  Setup s;
  std::mt19937_64 r(29);
  BackstrainField b =
      init_backstrain(std::vector<Mat2>(s.grid.size(), Mat2::Identity()),
                      s.grid, s.theta, s.tau, s.steps);
  std::vector<std::vector<Mat2>> grads;
  for (int i = 1; i <= s.steps; ++i) {
    const std::vector<Mat2> before(b.values().begin(), b.values().end());
    grads.push_back(random_gradients(s.grid.size(), r));
    record_arrivals(b, i, grads.back());
    for (int n = 0; n < s.grid.size(); ++n) {
      if (b.slab(n) == i) {
        CHECK(b.at(n) == grads.back()[n]);
      } else {
        CHECK(b.at(n) == before[n]);
      }
    }
    for (int n : b.last_arrivals())
      CHECK(b.slab(n) == i);
    // A repeated step changes nothing.
    const std::vector<Mat2> after(b.values().begin(), b.values().end());
    record_arrivals(b, i, random_gradients(s.grid.size(), r));
    CHECK(std::equal(after.begin(), after.end(), b.values().begin()));
  }
  for (int n = 0; n < s.grid.size(); ++n) {
    const int k = b.slab(n);
    if (k == BackstrainField::kNever) {
      CHECK(b.at(n) == Mat2::Identity());
      CHECK(s.theta[n] > s.grid.spec().final_time);
    } else if (k > 0) {
      CHECK(b.at(n) == grads[k - 1][n]);
    }
  }
}

TEST_CASE("freshly frozen nodes carry no elastic strain") {
  Setup s;
  std::mt19937_64 r(31);
  const MaterialParams m;
  BackstrainField b =
      init_backstrain(std::vector<Mat2>(s.grid.size(), Mat2::Identity()),
                      s.grid, s.theta, s.tau, s.steps);
  for (int i = 1; i <= s.steps; ++i) {
    const auto g = random_gradients(s.grid.size(), r);
    record_arrivals(b, i, g);
    const auto fe = elastic_strain(b, g);
    for (int n : b.last_arrivals()) {
      CHECK((fe[n] - Mat2::Identity()).norm() <= 1e-15);
      CHECK(W(m, fe[n]) <= 1e-30);
    }
  }
}

TEST_CASE("an inverted arrival is an internal error") {
  Setup s;
  BackstrainField b =
      init_backstrain(std::vector<Mat2>(s.grid.size(), Mat2::Identity()),
                      s.grid, s.theta, s.tau, s.steps);
  Mat2 flip;
  flip << -1, 0, 0, 1;
  CHECK_THROWS_AS(
      record_arrivals(b, 1, std::vector<Mat2>(s.grid.size(), flip)),
      InternalError);
}
