// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "accrete/geometry.hpp"

namespace accrete {

/// Nodal growth speed, bounded in [c_gamma, C_gamma].
struct SpeedField {
  std::vector<double> values;
  double c_gamma = 1.0;
  double C_gamma = 1.0;

  static SpeedField constant(const Grid& grid, double speed);
  /// Throws std::invalid_argument if a value leaves [c_gamma, C_gamma].
  void check(const Grid& grid) const;
};

/// Time of attachment: 0 on the initial body, positive elsewhere.
struct ThetaField {
  std::vector<double> values;
  /// Nodes in the order the solver fixed their values (fast marching only).
  std::vector<int> accepted_order;

  double operator[](int n) const { return values[n]; }
  double max() const;
};

/// First-order Godunov upwind discretisation of speed*|grad theta| = 1 with
/// theta = 0 on the initial body, solved by fast marching. Heap ties are
/// broken by node index.
ThetaField solve_fmm(const SpeedField& speed, const Grid& grid);

/// Shortest paths on the 16-neighbour graph (king and knight moves) with
/// edge weight length / harmonic-mean speed: a direct discretisation of the
/// minimal travel time over paths leaving the initial body.
ThetaField dijkstra_oracle(const SpeedField& speed, const Grid& grid);

/// Godunov upwind gradient magnitude of theta at an interior node.
double upwind_gradient_norm(const ThetaField& theta, const Grid& grid, int n);

struct BoundReport {
  double distance_tolerance = 0.0;
  double gradient_tolerance = 0.0;
  /// Largest amount by which dist/C_gamma - tol exceeds theta.
  double worst_lower = 0.0;
  /// Largest amount by which theta exceeds dist/c_gamma + tol.
  double worst_upper = 0.0;
  double worst_gradient = 0.0;
  double min_gradient = 0.0;
  double max_gradient = 0.0;
  int distance_violations = 0;
  int gradient_violations = 0;
  int checked_gradient_nodes = 0;
  std::vector<int> flagged_nodes;

  bool ok() const { return distance_violations == 0 && gradient_violations == 0; }
  std::string summary() const;
};

/// Checks dist(x,omega0)/C_gamma <= theta <= dist(x,omega0)/c_gamma at every
/// node within 3h/c_gamma, and that the upwind |grad theta| lies within
/// [1/C_gamma, 1/c_gamma] up to (h/ell)/c_gamma at interior nodes farther
/// than 2h from the initial body (ell the shorter container side).
BoundReport check_bounds(const ThetaField& theta, const Grid& grid,
                         double c_gamma, double C_gamma);

/// Nodes with theta < t.
NodeMask sublevel(const ThetaField& theta, double t);

/// max |a - b| over nodes.
double sup_distance(const ThetaField& a, const ThetaField& b);

}  // namespace accrete
