// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>

#include "accrete/config.hpp"
#include "accrete/geometry.hpp"

namespace accrete::test {

/// Disk seed at the centre of the unit square, the reference layout.
inline DomainSpec disk_domain(double anchor_radius = 0.05) {
  DomainSpec d;
  d.omega0.shapes = {Disk{{0.5, 0.5}, 0.1}};
  d.anchor.shapes = {Disk{{0.5, 0.5}, anchor_radius}};
  d.final_time = 0.25;
  d.c_gamma = 0.5;
  d.C_gamma = 1.0;
  return d;
}

/// Reference config shrunk to a 33 x 33 grid with `steps` time steps.
inline RunConfig small_config(int steps = 4) {
  RunConfig c = reference_config();
  c.resolution = 33;
  c.n_steps = steps;
  c.domain.anchor.shapes = {Disk{{0.5, 0.5}, 0.03}};
  return c;
}

inline double uniform(std::mt19937_64& r, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(r);
}

inline Mat2 random_matrix(std::mt19937_64& r, double scale) {
  Mat2 m;
  m << uniform(r, -scale, scale), uniform(r, -scale, scale),
      uniform(r, -scale, scale), uniform(r, -scale, scale);
  return m;
}

}  // namespace accrete::test
