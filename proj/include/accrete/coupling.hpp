// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "accrete/backstrain.hpp"
#include "accrete/constitutive.hpp"
#include "accrete/eikonal.hpp"
#include "accrete/equilibrium.hpp"

namespace accrete {

/// States y^0 ... y^N on the uniform partition t_i = i tau.
class DeformationHistory {
public:
  DeformationHistory() = default;
  DeformationHistory(double tau, DeformationState y0);

  void push(DeformationState s) { states_.push_back(std::move(s)); }
  int steps() const { return static_cast<int>(states_.size()) - 1; }
  double tau() const { return tau_; }
  const DeformationState& operator[](int i) const { return states_[i]; }
  const std::vector<DeformationState>& states() const { return states_; }

  /// Backward-constant: y^i on ((i-1) tau, i tau], y^0 at t = 0.
  const DeformationState& backward(double t) const;
  /// Forward-constant: y^(i-1) on [(i-1) tau, i tau), y^N at t = N tau.
  const DeformationState& forward(double t) const;
  /// Piecewise-affine interpolant of the deformation at time t.
  VectorField affine(double t) const;
  /// Piecewise-affine interpolant of grad y at node n, exact at the knots.
  Mat2 affine_gradient(int n, double t) const;

private:
  /// Index i and weight l with t = (i + l) tau, 0 <= l < 1 (l = 0 at knots).
  std::pair<int, double> locate(double t) const;

  double tau_ = 0.0;
  std::vector<DeformationState> states_;
};

/// Node-wise gamma(grad y0), clamped to [c_gamma, C_gamma].
SpeedField initial_speed(const DeformationState& y0, const GrowthLaw& law,
                         const MaterialParams& params);

/// Node-wise gamma of the affine interpolant of grad y at min(theta_prev, T),
/// clamped to [c_gamma, C_gamma]. The sampled gradients are returned through
/// `sampled` when given.
SpeedField speed_from_trajectory(const DeformationHistory& traj,
                                 const ThetaField& theta_prev,
                                 const GrowthLaw& law,
                                 const MaterialParams& params,
                                 std::vector<Mat2>* sampled = nullptr);

enum class StepFailurePolicy { kAbort, kContinue };

struct CouplingOptions {
  double tol_theta = 0.0;  ///< defaults to 1e-3 T when nonpositive
  double tol_y = 0.0;      ///< defaults to 1e-4 diam U when nonpositive
  int k_max = 20;
  StepFailurePolicy on_step_failure = StepFailurePolicy::kAbort;
};

struct CoupledProblem {
  explicit CoupledProblem(Grid g) : grid(std::move(g)) {}

  Grid grid;
  MaterialParams params;
  int n_steps = 16;
  ForceLaw force;
  /// Initial deformation; must equal the identity on fixed nodes.
  VectorField y0;
  /// Initial backstrain, read on the initial body only.
  std::vector<Mat2> a0;
  /// Empty means the default law of `params`.
  GrowthLaw growth;
  SolverOptions solver;
  CouplingOptions coupling;
};

/// Metrics of one outer iterate.
struct IterateMetrics {
  int k = 0;
  /// sup |theta^k - theta^(k-1)|.
  double theta_change = 0.0;
  /// max over steps and nodes of |y^k_i - y^(k-1)_i|; negative when undefined.
  double y_change = -1.0;
  /// sup |speed^k - speed^(k-1)| and Lip(gamma) times the sup difference of
  /// the sampled gradients; negative when undefined.
  double speed_change = -1.0;
  double speed_bound = -1.0;
  double min_det = 0.0;
  double max_residual = 0.0;
  double cumulative_dissipation = 0.0;
  /// Steps whose final energy exceeded the energy of the previous state.
  int minimality_violations = 0;
  /// Largest W(grad y A^-1) at freshly frozen nodes.
  double attachment_stress = 0.0;
  int nonconverged_steps = 0;
  int bound_violations = 0;
  /// Distance from the nodes with theta <= T to the container boundary.
  double front_clearance = 0.0;
  double seconds = 0.0;
  /// Step that missed tol_el under StepFailurePolicy::kAbort, 0 if none.
  int failed_step = 0;
  double failed_residual = 0.0;
};

struct ConvergenceReport {
  bool converged = false;
  int iterations = 0;
  double tol_theta = 0.0;
  double tol_y = 0.0;
  /// The last iterate stopped at a failed step; its trajectory is partial.
  bool step_failure = false;
  std::string message;
  std::vector<IterateMetrics> history;
};

struct CoupledState {
  ThetaField theta;
  /// theta^0, from the speed at y0.
  ThetaField theta_initial;
  SpeedField speed;
  DeformationHistory trajectory;
  BackstrainField backstrain;
  int iteration = 0;
  /// Rows of every outer iterate, tagged with LedgerRow::outer.
  EnergyLedger ledger;
};

struct CoupledResult {
  CoupledState state;
  ConvergenceReport report;
};

using IterateObserver = std::function<void(const IterateMetrics&)>;

/// Alternates full-trajectory equilibrium solves with frozen-coefficient
/// eikonal solves until theta and y settle or k_max is reached. Iterate k
/// builds its backstrain slabs from theta^(k-1), solves y^k step by step, and
/// solves theta^k with the speed sampled from y^k at min(theta^(k-1), T).
/// An iterate that reproduces theta exactly is a fixed point and stops the
/// loop; otherwise both tolerances must hold from k = 2 on.
/// Under the abort policy a failed step ends the loop with a nonconverged
/// report (step_failure set) holding the partial trajectory.
CoupledResult run_coupled(const CoupledProblem& problem,
                          const IterateObserver& observer = {});

/// Solves one trajectory for a frozen theta. Exposed for testing.
DeformationHistory solve_trajectory(const CoupledProblem& problem,
                                    const Discretization& disc,
                                    const ThetaField& theta, int outer,
                                    BackstrainField& backstrain,
                                    EnergyLedger& ledger,
                                    IterateMetrics& metrics);

}  // namespace accrete
