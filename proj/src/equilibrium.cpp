// SPDX-License-Identifier: Apache-2.0

#include "accrete/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "accrete/errors.hpp"
#include "accrete/optimizer.hpp"
#include "accrete/parallel.hpp"

namespace accrete {

namespace {

constexpr int kChunks = 64;

struct NodeTerms {
  double stored = 0.0;
  double barrier = 0.0;
  double second_grade = 0.0;
  double dissipation = 0.0;
  double load = 0.0;
};

}  // namespace

Vec2 ForceLaw::at(double t) const {
  if (ramp_time <= 0.0)
    return value;
  const double u = std::clamp(t / ramp_time, 0.0, 1.0);
  return value * (u * u * (3.0 - 2.0 * u));
}

DeformationState DeformationState::from(VectorField y,
                                        const DifferenceOperators& ops) {
  DeformationState s;
  s.y = std::move(y);
  const int n = ops.size();
  s.grad.resize(n);
  s.hess.resize(n);
  for (int k = 0; k < n; ++k) {
    s.grad[k] = ops.gradient_at(s.y, k);
    s.hess[k] = ops.hessian_at(s.y, k);
  }
  return s;
}

double DeformationState::min_det() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Mat2& f : grad)
    m = std::min(m, f.determinant());
  return m;
}

Discretization::Discretization(const Grid& grid)
    : grid_(grid), ops_(grid, BoundaryClosure::kSummationByParts) {
  const double h2 = grid.h() * grid.h();
  measure_.resize(grid.size());
  for (int n = 0; n < grid.size(); ++n) {
    measure_[n] = grid.quadrature_weight(n) * h2;
    if (!grid.is_fixed(n))
      free_.push_back(n);
  }
}

Eigen::VectorXd Discretization::gather(const VectorField& y) const {
  Eigen::VectorXd x(free_dofs());
  for (size_t k = 0; k < free_.size(); ++k) {
    x[2 * k] = y[free_[k]].x();
    x[2 * k + 1] = y[free_[k]].y();
  }
  return x;
}

void Discretization::scatter(const Eigen::VectorXd& x, VectorField& y) const {
  for (size_t k = 0; k < free_.size(); ++k)
    y[free_[k]] = Vec2(x[2 * k], x[2 * k + 1]);
}

IncrementalEnergy::IncrementalEnergy(const IncrementalProblem& prob,
                                     int threads)
    : prob_(prob), threads_(std::max(1, threads)) {
  if (!prob.disc || !prob.theta || !prob.backstrain || !prob.previous)
    throw InternalError("incremental problem is missing a field");
  if (!(prob.tau > 0.0))
    throw InternalError("incremental problem needs tau > 0");
  const int n = prob.disc->grid().size();
  switch_.resize(n);
  a_inv_.resize(n);
  for (int k = 0; k < n; ++k) {
    switch_[k] = h_switch((*prob.theta)[k] - prob.time, prob.params.delta);
    a_inv_[k] = prob.backstrain->at(k).inverse();
  }
}

bool IncrementalEnergy::evaluate(const VectorField& y, EnergyParts& parts,
                                 VectorField* gradient,
                                 double det_floor) const {
  const Discretization& disc = *prob_.disc;
  const DifferenceOperators& ops = disc.ops();
  const Grid& grid = disc.grid();
  const MaterialParams& m = prob_.params;
  const DeformationState& prev = *prob_.previous;
  const int n = grid.size();
  const double tau = prob_.tau;

  std::vector<NodeTerms> partial(kChunks);
  std::vector<char> admissible(kChunks, 1);
  std::vector<Mat2> stress;
  std::vector<Tensor3> hyper;
  if (gradient) {
    stress.resize(n);
    hyper.resize(n);
  }

  parallel_for(n, kChunks, threads_, [&](int b, int e, int c) {
    NodeTerms acc;
    for (int k = b; k < e; ++k) {
      const Mat2 F = ops.gradient_at(y, k);
      const double det = F.determinant();
      if (!(det > det_floor)) {
        admissible[c] = 0;
        return;
      }
      const Tensor3 G = ops.hessian_at(y, k);
      const double w = disc.cell_measure(k);
      const double hs = switch_[k];
      const Mat2 Fe = F * a_inv_[k];
      const Mat2& Fp = prev.grad[k];
      const Mat2 Fdot = (F - Fp) / tau;
      const double vj = w * VJ(m, F);
      const double hg = w * H2nd(m, G);
      acc.stored += w * hs * W(m, Fe) + vj + hg;
      acc.barrier += vj;
      acc.second_grade += hg;
      acc.dissipation += w * hs * tau * R(m, Fp, Fdot);
      acc.load -= w * hs * prob_.force.dot(y[k]);
      if (gradient) {
        stress[k] = w * (hs * (DW(m, Fe) * a_inv_[k].transpose() +
                               dRdFdot(m, Fp, Fdot)) +
                         DVJ(m, F));
        hyper[k] = w * DH(m, G);
      }
    }
    partial[c] = acc;
  });

  for (char ok : admissible)
    if (!ok)
      return false;

  parts = EnergyParts{};
  for (const NodeTerms& t : partial) {
    parts.stored += t.stored;
    parts.barrier += t.barrier;
    parts.second_grade += t.second_grade;
    parts.dissipation += t.dissipation;
    parts.load += t.load;
  }
  parts.total = parts.stored + parts.dissipation + parts.load;

  if (gradient) {
    VectorField& g = *gradient;
    g.assign(n, Vec2::Zero());
    for (int k = 0; k < n; ++k) {
      const Mat2& P = stress[k];
      for (int d = 0; d < 2; ++d)
        for (const StencilEntry& s : ops.first(k, d))
          g[s.node] += s.coeff * P.col(d);
      const Tensor3& Q = hyper[k];
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          for (const StencilEntry& s : ops.second(k, j, l))
            g[s.node] += s.coeff * Vec2(Q(0, j, l), Q(1, j, l));
      g[k] -= disc.cell_measure(k) * switch_[k] * prob_.force;
    }
    for (int k = 0; k < n; ++k)
      if (grid.is_fixed(k))
        g[k].setZero();
  }
  return true;
}

EnergyEvaluation incremental_energy(const VectorField& y,
                                    const IncrementalProblem& prob) {
  IncrementalEnergy energy(prob);
  EnergyEvaluation out;
  if (!energy.evaluate(y, out.parts, &out.gradient, 0.0))
    throw InadmissibleState("inadmissible state: det grad y <= 0 at a node");
  return out;
}

double el_residual(const VectorField& y, const IncrementalProblem& prob) {
  const EnergyEvaluation ev = incremental_energy(y, prob);
  double r = 0.0;
  for (const Vec2& g : ev.gradient)
    r = std::max(r, g.lpNorm<Eigen::Infinity>());
  return r;
}

double dissipation_increment(const Discretization& disc,
                             const DeformationState& current,
                             const DeformationState& previous,
                             const ThetaField& theta, double time, double tau,
                             const MaterialParams& params) {
  double sum = 0.0;
  for (int k = 0; k < disc.grid().size(); ++k) {
    const Mat2 Fdot = (current.grad[k] - previous.grad[k]) / tau;
    sum += disc.cell_measure(k) * h_switch(theta[k] - time, params.delta) *
           R(params, previous.grad[k], Fdot);
  }
  return tau * sum;
}

StepResult minimize_step(const IncrementalProblem& prob,
                         const SolverOptions& options,
                         const VectorField* start) {
  const Discretization& disc = *prob.disc;
  const Grid& grid = disc.grid();
  IncrementalEnergy energy(prob, options.threads);

  EnergyParts initial;
  if (!energy.evaluate(prob.previous->y, initial, nullptr, options.det_guard))
    throw InadmissibleState("inadmissible state: previous step has det grad "
                            "y at or below the admissibility guard");

  VectorField work = prob.previous->y;
  if (start) {
    disc.scatter(disc.gather(*start), work);
    EnergyParts probe;
    if (!energy.evaluate(work, probe, nullptr, options.det_guard))
      throw InadmissibleState("inadmissible state: starting guess has det "
                              "grad y at or below the admissibility guard");
  }
  VectorField grad;
  Objective objective = [&](const Eigen::VectorXd& x, double& value,
                            Eigen::VectorXd& g) {
    disc.scatter(x, work);
    EnergyParts parts;
    if (!energy.evaluate(work, parts, &grad, options.det_guard))
      return false;
    value = parts.total;
    g = disc.gather(grad);
    return true;
  };

  LbfgsOptions lo;
  lo.memory = options.memory;
  lo.max_iterations = options.max_iterations;
  lo.gradient_tolerance = options.tol_el;
  lo.max_step = 0.5 * grid.h();
  const LbfgsResult res = minimize_lbfgs(objective, disc.gather(work), lo);

  if (!res.converged && !options.allow_nonconverged)
    throw NonconvergenceError("nonconverged step " + std::to_string(prob.step) +
                                  ": residual " +
                                  std::to_string(res.gradient_sup),
                              res.gradient_sup);

  VectorField y = prob.previous->y;
  disc.scatter(res.x, y);
  EnergyParts parts;
  energy.evaluate(y, parts, nullptr, 0.0);

  StepResult out;
  out.state = DeformationState::from(std::move(y), disc.ops());
  LedgerRow& row = out.row;
  row.step = prob.step;
  row.time = prob.time;
  row.energy = parts.total;
  row.energy_start = initial.total;
  row.stored = parts.stored;
  row.dissipation = parts.dissipation;
  row.min_det = out.state.min_det();
  row.residual = res.gradient_sup;
  row.iterations = res.iterations;
  row.cumulative_dissipation = parts.dissipation;
  row.converged = res.converged;
  const MaterialParams& m = prob.params;
  for (int k = 0; k < grid.size(); ++k) {
    const double w = disc.cell_measure(k);
    const double hs = h_switch((*prob.theta)[k] - prob.time, m.delta);
    row.work -= w * hs * prob.force.dot(out.state.y[k] - grid.point(k));
    row.hessian_p_sum += w * std::pow(out.state.hess[k].norm(), m.p);
    row.det_q_sum += w * std::pow(out.state.grad[k].determinant(), -m.q);
  }
  return out;
}

}  // namespace accrete
