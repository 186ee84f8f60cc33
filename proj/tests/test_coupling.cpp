// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "accrete/config.hpp"
#include "accrete/coupling.hpp"
#include "accrete/errors.hpp"
#include "helpers.hpp"

using namespace accrete;

namespace {

DeformationState shifted(const Grid& g, const DifferenceOperators& ops,
                         double s) {
  VectorField y = identity_field(g);
  for (int n = 0; n < g.size(); ++n)
    y[n] = (1.0 + s) * y[n];
  return DeformationState::from(y, ops);
}

}  // namespace

TEST_CASE("trajectory interpolants") {
  const Grid g = build_grid(test::disk_domain(0.03), 33);
  const DifferenceOperators ops(g, BoundaryClosure::kSecondOrder);
  DeformationHistory h(0.1, shifted(g, ops, 0.0));
  h.push(shifted(g, ops, 0.1));
  h.push(shifted(g, ops, 0.3));
  CHECK(h.steps() == 2);

  const int n = g.index(20, 10);
  CHECK(&h.backward(0.0) == &h[0]);
  CHECK(&h.backward(0.05) == &h[1]);
  CHECK(&h.backward(0.1) == &h[1]);
  CHECK(&h.backward(0.15) == &h[2]);
  CHECK(&h.forward(0.05) == &h[0]);
  CHECK(&h.forward(0.1) == &h[1]);
  CHECK(&h.forward(0.2) == &h[2]);

  CHECK(h.affine_gradient(n, 0.1) == h[1].grad[n]);
  CHECK(h.affine_gradient(n, 0.2) == h[2].grad[n]);
  const Mat2 mid = h.affine_gradient(n, 0.15);
  CHECK(mid(0, 0) == doctest::Approx(1.2));
  CHECK(mid(1, 1) == doctest::Approx(1.2));
  CHECK(h.affine_gradient(n, 5.0) == h[2].grad[n]);
  const VectorField y = h.affine(0.05);
  CHECK(y[n].x() == doctest::Approx(1.05 * g.point(n).x()));
}

TEST_CASE("speed sampling clamps and uses the previous arrival time") {
  const Grid g = build_grid(test::disk_domain(0.03), 33);
  const DifferenceOperators ops(g, BoundaryClosure::kSecondOrder);
  MaterialParams m;
  m.kappa = 5.0;
  const GrowthLaw law = default_growth_law(m);
  const DeformationState id = shifted(g, ops, 0.0);
  const SpeedField s0 = initial_speed(id, law, m);
  for (double v : s0.values)
    CHECK(v == m.gamma0);

  DeformationHistory h(0.125, id);
  h.push(shifted(g, ops, 0.2));
  h.push(shifted(g, ops, 0.2));
  ThetaField theta;
  theta.values.assign(g.size(), 0.0);
  std::vector<Mat2> sampled;
  const SpeedField at0 = speed_from_trajectory(h, theta, law, m, &sampled);
  CHECK(at0.values[0] == m.gamma0);
  CHECK(sampled[0] == id.grad[0]);
  theta.values.assign(g.size(), 10.0);
  const SpeedField late = speed_from_trajectory(h, theta, law, m);
  CHECK(late.values[0] == doctest::Approx(gamma(m, 1.2 * Mat2::Identity())));
  GrowthLaw wild = [](const Mat2&) { return 7.0; };
  for (double v : speed_from_trajectory(h, theta, wild, m).values)
    CHECK(v == m.C_gamma);
}

TEST_CASE("decoupled regime stops after one iterate") {
  RunConfig c = test::small_config(2);
  c.material.kappa = 0.0;
  const CoupledResult r = run_coupled(make_problem(c));
  CHECK(r.report.converged);
  CHECK(r.report.iterations == 1);
  CHECK(r.report.history[0].theta_change == 0.0);
  CHECK(r.state.theta.values == r.state.theta_initial.values);
}

TEST_CASE("unloaded run stays at the identity") {
  RunConfig c = test::small_config(4);
  c.force = ForceLaw{};
  const CoupledProblem p = make_problem(c);
  const CoupledResult r = run_coupled(p);
  CHECK(r.report.converged);
  CHECK(r.report.iterations == 1);
  for (const auto& s : r.state.trajectory.states())
    for (int n = 0; n < p.grid.size(); ++n)
      CHECK((s.y[n] - p.grid.point(n)).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("coupled run on a coarse grid") {
  const RunConfig c = test::small_config(4);
  const CoupledProblem p = make_problem(c);
  int calls = 0;
  const CoupledResult r = run_coupled(p, [&](const IterateMetrics& m) {
    ++calls;
    CHECK(m.k == calls);
    CHECK(m.min_det > 0.0);
    CHECK(m.bound_violations == 0);
    CHECK(m.front_clearance >= 2 * p.grid.h());
    CHECK(m.minimality_violations == 0);
    CHECK(m.attachment_stress <= 1e-12);
    if (m.k > 1)
      CHECK(m.speed_change <= m.speed_bound * (1 + 1e-12));
  });
  CHECK(r.report.converged);
  CHECK(calls == r.report.iterations);
  CHECK(r.state.trajectory.steps() == c.n_steps);
  CHECK(static_cast<int>(r.state.ledger.rows.size()) ==
        c.n_steps * r.report.iterations);
  for (int n = 0; n < p.grid.size(); ++n) {
    CHECK(r.state.theta[n] <= r.state.theta_initial[n] * 2.0 + 1e-12);
    const int k = r.state.backstrain.slab(n);
    if (k > 0 && k != BackstrainField::kNever)
      CHECK(r.state.backstrain.at(n) == r.state.trajectory[k].grad[n]);
  }
}

TEST_CASE("a failed step ends the loop with the partial trajectory") {
  RunConfig c = test::small_config(4);
  c.solver.max_iterations = 1;
  const CoupledResult r = run_coupled(make_problem(c));
  CHECK_FALSE(r.report.converged);
  CHECK(r.report.step_failure);
  CHECK(r.report.history.back().failed_step == 1);
  CHECK(r.state.trajectory.steps() == 0);
  CHECK(r.report.message.find("step 1") != std::string::npos);

  c.coupling.on_step_failure = StepFailurePolicy::kContinue;
  c.coupling.k_max = 1;
  const CoupledResult k = run_coupled(make_problem(c));
  CHECK_FALSE(k.report.step_failure);
  CHECK(k.report.history[0].nonconverged_steps == c.n_steps);
  CHECK(k.state.trajectory.steps() == c.n_steps);
}

TEST_CASE("initial data must respect the anchor") {
  CoupledProblem p = make_problem(test::small_config(2));
  p.y0[p.grid.index(16, 16)] += Vec2(1e-3, 0.0);
  CHECK_THROWS_AS(run_coupled(p), ConfigError);
  p = make_problem(test::small_config(2));
  p.n_steps = 0;
  CHECK_THROWS_AS(run_coupled(p), ConfigError);
}
