// SPDX-License-Identifier: Apache-2.0

#include "accrete/coupling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "accrete/errors.hpp"

namespace accrete {

DeformationHistory::DeformationHistory(double tau, DeformationState y0)
    : tau_(tau) {
  states_.push_back(std::move(y0));
}

std::pair<int, double> DeformationHistory::locate(double t) const {
  const int n = steps();
  if (t <= 0.0 || n == 0)
    return {0, 0.0};
  if (t >= n * tau_)
    return {n, 0.0};
  int i = static_cast<int>(std::floor(t / tau_));
  while (i > 0 && i * tau_ > t)
    --i;
  while ((i + 1) * tau_ <= t)
    ++i;
  return {i, (t - i * tau_) / tau_};
}

const DeformationState& DeformationHistory::backward(double t) const {
  auto [i, l] = locate(t);
  return states_[l > 0.0 ? i + 1 : i];
}

const DeformationState& DeformationHistory::forward(double t) const {
  auto [i, l] = locate(t);
  (void)l;
  return states_[i];
}

VectorField DeformationHistory::affine(double t) const {
  auto [i, l] = locate(t);
  VectorField y = states_[i].y;
  if (l > 0.0)
    for (size_t n = 0; n < y.size(); ++n)
      y[n] = (1.0 - l) * y[n] + l * states_[i + 1].y[n];
  return y;
}

Mat2 DeformationHistory::affine_gradient(int n, double t) const {
  auto [i, l] = locate(t);
  if (l == 0.0)
    return states_[i].grad[n];
  return (1.0 - l) * states_[i].grad[n] + l * states_[i + 1].grad[n];
}

namespace {

double clamp_speed(double s, const MaterialParams& m) {
  return std::clamp(s, m.c_gamma, m.C_gamma);
}

GrowthLaw resolve_law(const CoupledProblem& p) {
  return p.growth ? p.growth : default_growth_law(p.params);
}

double front_clearance(const ThetaField& theta, const Grid& grid, double T) {
  const double lx = (grid.nx() - 1) * grid.h();
  const double ly = (grid.ny() - 1) * grid.h();
  double best = std::numeric_limits<double>::infinity();
  for (int n = 0; n < grid.size(); ++n) {
    if (!(theta[n] <= T))
      continue;
    const Vec2 x = grid.point(n);
    best = std::min({best, x.x(), lx - x.x(), x.y(), ly - x.y()});
  }
  return best;
}

double max_change(const DeformationHistory& a, const DeformationHistory& b) {
  double worst = 0.0;
  for (int i = 0; i <= std::min(a.steps(), b.steps()); ++i)
    for (size_t n = 0; n < a[i].y.size(); ++n)
      worst = std::max(worst, (a[i].y[n] - b[i].y[n]).norm());
  return worst;
}

}  // namespace

SpeedField initial_speed(const DeformationState& y0, const GrowthLaw& law,
                         const MaterialParams& params) {
  SpeedField s;
  s.c_gamma = params.c_gamma;
  s.C_gamma = params.C_gamma;
  s.values.resize(y0.grad.size());
  for (size_t n = 0; n < y0.grad.size(); ++n)
    s.values[n] = clamp_speed(law(y0.grad[n]), params);
  return s;
}

SpeedField speed_from_trajectory(const DeformationHistory& traj,
                                 const ThetaField& theta_prev,
                                 const GrowthLaw& law,
                                 const MaterialParams& params,
                                 std::vector<Mat2>* sampled) {
  const double T = traj.steps() * traj.tau();
  const int n = static_cast<int>(theta_prev.values.size());
  SpeedField s;
  s.c_gamma = params.c_gamma;
  s.C_gamma = params.C_gamma;
  s.values.resize(n);
  if (sampled)
    sampled->resize(n);
  for (int k = 0; k < n; ++k) {
    const Mat2 g = traj.affine_gradient(k, std::min(theta_prev[k], T));
    s.values[k] = clamp_speed(law(g), params);
    if (sampled)
      (*sampled)[k] = g;
  }
  return s;
}

DeformationHistory solve_trajectory(const CoupledProblem& problem,
                                    const Discretization& disc,
                                    const ThetaField& theta, int outer,
                                    BackstrainField& backstrain,
                                    EnergyLedger& ledger,
                                    IterateMetrics& metrics) {
  const Grid& grid = disc.grid();
  const int steps = problem.n_steps;
  const double tau = grid.spec().final_time / steps;
  backstrain = init_backstrain(problem.a0, grid, theta, tau, steps);

  DeformationHistory traj(tau,
                          DeformationState::from(problem.y0, disc.ops()));
  SolverOptions so = problem.solver;
  so.allow_nonconverged =
      problem.coupling.on_step_failure == StepFailurePolicy::kContinue;

  double cumulative = 0.0;
  metrics.min_det = traj[0].min_det();
  for (int i = 1; i <= steps; ++i) {
    IncrementalProblem prob;
    prob.disc = &disc;
    prob.step = i;
    prob.time = i * tau;
    prob.tau = tau;
    prob.theta = &theta;
    prob.backstrain = &backstrain;
    prob.previous = &traj[i - 1];
    prob.force = problem.force.at(prob.time);
    prob.params = problem.params;

    StepResult r;
    try {
      r = minimize_step(prob, so);
    } catch (const NonconvergenceError& e) {
      metrics.failed_step = i;
      metrics.failed_residual = e.residual();
      break;
    }
    cumulative += r.row.dissipation;
    r.row.outer = outer;
    r.row.cumulative_dissipation = cumulative;

    record_arrivals(backstrain, i, r.state.grad);
    for (int n : backstrain.last_arrivals()) {
      const Mat2 fe = r.state.grad[n] * backstrain.at(n).inverse();
      metrics.attachment_stress =
          std::max(metrics.attachment_stress, W(problem.params, fe));
    }

    metrics.min_det = std::min(metrics.min_det, r.row.min_det);
    metrics.max_residual = std::max(metrics.max_residual, r.row.residual);
    if (r.row.energy > r.row.energy_start)
      ++metrics.minimality_violations;
    if (!r.row.converged)
      ++metrics.nonconverged_steps;
    ledger.rows.push_back(r.row);
    traj.push(std::move(r.state));
  }
  metrics.cumulative_dissipation = cumulative;
  return traj;
}

CoupledResult run_coupled(const CoupledProblem& problem,
                          const IterateObserver& observer) {
  const Grid& grid = problem.grid;
  const DomainSpec& spec = grid.spec();
  const double T = spec.final_time;
  validate(problem.params);
  if (problem.n_steps < 1)
    throw ConfigError("number of time steps must be at least 1");
  if (static_cast<int>(problem.y0.size()) != grid.size() ||
      static_cast<int>(problem.a0.size()) != grid.size())
    throw ConfigError("initial data does not match the grid");
  for (int n = 0; n < grid.size(); ++n)
    if (grid.is_fixed(n) && problem.y0[n] != grid.point(n))
      throw ConfigError("initial deformation must equal the identity on the "
                        "anchor and the container boundary");

  Discretization disc(grid);
  const GrowthLaw law = resolve_law(problem);

  CoupledResult out;
  CoupledState& st = out.state;
  ConvergenceReport& rep = out.report;
  rep.tol_theta = problem.coupling.tol_theta > 0.0 ? problem.coupling.tol_theta
                                                   : 1e-3 * T;
  rep.tol_y = problem.coupling.tol_y > 0.0
                  ? problem.coupling.tol_y
                  : 1e-4 * std::hypot(spec.lx, spec.ly);

  const DeformationState y0 = DeformationState::from(problem.y0, disc.ops());
  if (!(y0.min_det() > 0.0))
    throw ConfigError("initial deformation is not orientation preserving");
  st.speed = initial_speed(y0, law, problem.params);
  st.theta = solve_fmm(st.speed, grid);
  st.theta_initial = st.theta;

  const double lip = growth_lipschitz_bound(problem.params);
  std::vector<Mat2> sampled_prev;
  SpeedField speed_prev = st.speed;
  DeformationHistory traj_prev;

  for (int k = 1; k <= problem.coupling.k_max; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    IterateMetrics m;
    m.k = k;
    DeformationHistory traj = solve_trajectory(problem, disc, st.theta, k,
                                               st.backstrain, st.ledger, m);
    if (m.failed_step > 0) {
      st.trajectory = std::move(traj);
      st.iteration = k;
      rep.iterations = k;
      rep.step_failure = true;
      rep.history.push_back(m);
      if (observer)
        observer(m);
      std::ostringstream os;
      os << "step " << m.failed_step << " of iterate " << k
         << " did not reach tol_el (residual " << m.failed_residual << ")";
      rep.message = os.str();
      return out;
    }
    std::vector<Mat2> sampled;
    SpeedField speed =
        speed_from_trajectory(traj, st.theta, law, problem.params, &sampled);
    ThetaField theta = solve_fmm(speed, grid);

    m.theta_change = sup_distance(theta, st.theta);
    if (k > 1) {
      m.y_change = max_change(traj, traj_prev);
      double ds = 0.0, dg = 0.0;
      for (int n = 0; n < grid.size(); ++n) {
        ds = std::max(ds, std::abs(speed.values[n] - speed_prev.values[n]));
        dg = std::max(dg, (sampled[n] - sampled_prev[n]).norm());
      }
      m.speed_change = ds;
      m.speed_bound = lip * dg;
    }
    const BoundReport bounds = check_bounds(
        theta, grid, problem.params.c_gamma, problem.params.C_gamma);
    m.bound_violations = bounds.distance_violations + bounds.gradient_violations;
    m.front_clearance = front_clearance(theta, grid, T);
    m.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();

    st.trajectory = std::move(traj);
    st.theta = std::move(theta);
    st.speed = std::move(speed);
    st.iteration = k;
    rep.iterations = k;
    rep.history.push_back(m);
    if (observer)
      observer(m);

    const bool fixed_point = m.theta_change == 0.0;
    const bool within = k > 1 && m.theta_change <= rep.tol_theta &&
                        m.y_change <= rep.tol_y;
    if (fixed_point || within) {
      rep.converged = true;
      std::ostringstream os;
      os << "converged at k = " << k
         << (fixed_point ? " (theta reproduced exactly)" : "");
      rep.message = os.str();
      return out;
    }
    traj_prev = st.trajectory;
    sampled_prev = std::move(sampled);
    speed_prev = st.speed;
  }
  std::ostringstream os;
  os << "coupling nonconverged after " << problem.coupling.k_max
     << " iterations";
  rep.message = os.str();
  return out;
}

}  // namespace accrete
