// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include <Eigen/Dense>

namespace accrete {

struct LbfgsOptions {
  int memory = 20;
  int max_iterations = 20000;
  /// Stop once the sup-norm of the gradient is at or below this value.
  double gradient_tolerance = 1e-8;
  double armijo = 1e-4;
  double backtrack = 0.5;
  /// Largest sup-norm of a single step.
  double max_step = 1.0;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double gradient_sup = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Objective callback: returns false if x is outside the admissible set, in
/// which case value and gradient are left unspecified.
using Objective =
    std::function<bool(const Eigen::VectorXd& x, double& value,
                       Eigen::VectorXd& gradient)>;

/// Limited-memory BFGS with backtracking Armijo line search. Trial points the
/// objective rejects are treated like failed decrease and the step is
/// shortened. The iterate values are monotonically nonincreasing.
LbfgsResult minimize_lbfgs(const Objective& objective, Eigen::VectorXd x0,
                           const LbfgsOptions& options);

}  // namespace accrete
