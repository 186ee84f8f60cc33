// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <vector>

#include "accrete/backstrain.hpp"
#include "accrete/constitutive.hpp"
#include "accrete/eikonal.hpp"
#include "accrete/geometry.hpp"

namespace accrete {

/// Body force, constant in space, ramped smoothly in time:
/// f(t) = value * s(min(t/ramp_time, 1)) with s(u) = 3u^2 - 2u^3.
/// A nonpositive ramp time means no ramp.
struct ForceLaw {
  Vec2 value = Vec2::Zero();
  double ramp_time = 0.0;

  Vec2 at(double t) const;
};

/// Nodal deformation together with its discrete first and second gradients.
struct DeformationState {
  VectorField y;
  std::vector<Mat2> grad;
  std::vector<Tensor3> hess;

  static DeformationState from(VectorField y, const DifferenceOperators& ops);
  double min_det() const;
};

/// Discretisation shared by every incremental problem on one grid: the
/// summation-by-parts strain stencils, the second-gradient stencils, and the
/// free/fixed node partition (fixed = anchor and container boundary).
class Discretization {
public:
  explicit Discretization(const Grid& grid);

  const Grid& grid() const { return grid_; }
  const DifferenceOperators& ops() const { return ops_; }
  const std::vector<int>& free_nodes() const { return free_; }
  int free_dofs() const { return 2 * static_cast<int>(free_.size()); }

  /// Nodal quadrature weight times h^2.
  double cell_measure(int n) const { return measure_[n]; }

  Eigen::VectorXd gather(const VectorField& y) const;
  /// Writes free values into y; fixed entries are left untouched.
  void scatter(const Eigen::VectorXd& x, VectorField& y) const;

private:
  Grid grid_;
  DifferenceOperators ops_;
  std::vector<int> free_;
  std::vector<double> measure_;
};

/// One step of the incremental minimisation: find y^i minimising
///   sum_n m_n [ h(theta - t_i) (W(grad y A^-1)
///               + tau R(grad y^{i-1}, (grad y - grad y^{i-1}) / tau)
///               - f(t_i) . y)
///             + V^J(grad y) + H(grad^2 y) ]
/// over deformations equal to the identity on fixed nodes.
struct IncrementalProblem {
  const Discretization* disc = nullptr;
  int step = 1;
  double time = 0.0;
  double tau = 0.0;
  const ThetaField* theta = nullptr;
  const BackstrainField* backstrain = nullptr;
  const DeformationState* previous = nullptr;
  Vec2 force = Vec2::Zero();
  MaterialParams params;
};

struct EnergyParts {
  double total = 0.0;
  /// h W + V^J + H.
  double stored = 0.0;
  /// The V^J and H shares of `stored`.
  double barrier = 0.0;
  double second_grade = 0.0;
  /// tau h R, i.e. the dissipation increment.
  double dissipation = 0.0;
  /// - h f . y.
  double load = 0.0;
};

/// Evaluates the incremental energy and its gradient for one problem, caching
/// the per-node material switch and inverse backstrain.
class IncrementalEnergy {
public:
  IncrementalEnergy(const IncrementalProblem& prob, int threads = 1);

  /// Returns false (and leaves outputs unspecified) if some node has
  /// det grad y <= det_floor.
  bool evaluate(const VectorField& y, EnergyParts& parts,
                VectorField* gradient, double det_floor = 0.0) const;

  const IncrementalProblem& problem() const { return prob_; }

private:
  IncrementalProblem prob_;
  int threads_;
  std::vector<double> switch_;
  std::vector<Mat2> a_inv_;
};

struct EnergyEvaluation {
  EnergyParts parts;
  /// Nodal gradient with respect to y; zero on fixed nodes.
  VectorField gradient;
  double value() const { return parts.total; }
};

/// Throws InadmissibleState if det grad y <= 0 at some node.
EnergyEvaluation incremental_energy(const VectorField& y,
                                    const IncrementalProblem& prob);

/// Sup-norm of the energy gradient over free degrees of freedom: the residual
/// of the discrete Euler-Lagrange system tested against the nodal basis.
double el_residual(const VectorField& y, const IncrementalProblem& prob);

/// tau * sum_n m_n h(theta - t_i) R(grad y^{i-1}, (grad y^i - grad y^{i-1}) / tau).
double dissipation_increment(const Discretization& disc,
                             const DeformationState& current,
                             const DeformationState& previous,
                             const ThetaField& theta, double time, double tau,
                             const MaterialParams& params);

struct SolverOptions {
  double tol_el = 1e-8;
  int max_iterations = 20000;
  int memory = 20;
  /// Trial states with min det grad y at or below this value are rejected.
  double det_guard = 1e-8;
  int threads = 1;
  /// If false, minimize_step throws NonconvergenceError at the iteration cap.
  bool allow_nonconverged = false;
};

/// One row of the energy ledger.
struct LedgerRow {
  int outer = 0;
  int step = 0;
  double time = 0.0;
  double energy = 0.0;
  double energy_start = 0.0;  ///< incremental energy of y^{i-1}
  double stored = 0.0;
  double dissipation = 0.0;
  /// - sum m h f . (y - id): load potential relative to the reference.
  double work = 0.0;
  double min_det = 0.0;
  double residual = 0.0;
  int iterations = 0;
  double cumulative_dissipation = 0.0;
  /// sum m |grad^2 y|^p and sum m (det grad y)^-q.
  double hessian_p_sum = 0.0;
  double det_q_sum = 0.0;
  bool converged = true;
};

struct EnergyLedger {
  std::vector<LedgerRow> rows;
  double cumulative_dissipation() const {
    return rows.empty() ? 0.0 : rows.back().cumulative_dissipation;
  }
};

struct StepResult {
  DeformationState state;
  LedgerRow row;
};

/// Minimises the incremental energy from y^{i-1} with L-BFGS, rejecting trial
/// states with min det grad y <= det_guard. The ledger row's cumulative
/// dissipation only holds this step's increment; callers accumulate. The
/// iteration starts from `start` when given (fixed entries are ignored).
StepResult minimize_step(const IncrementalProblem& prob,
                         const SolverOptions& options,
                         const VectorField* start = nullptr);

}  // namespace accrete
