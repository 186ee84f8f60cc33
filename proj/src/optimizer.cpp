// SPDX-License-Identifier: Apache-2.0

#include "accrete/optimizer.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace accrete {

namespace {

struct Pair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

Eigen::VectorXd two_loop(const std::deque<Pair>& mem,
                         const Eigen::VectorXd& g) {
  Eigen::VectorXd q = g;
  std::vector<double> alpha(mem.size());
  for (int k = static_cast<int>(mem.size()) - 1; k >= 0; --k) {
    alpha[k] = mem[k].rho * mem[k].s.dot(q);
    q -= alpha[k] * mem[k].y;
  }
  if (!mem.empty()) {
    const Pair& last = mem.back();
    q *= last.s.dot(last.y) / last.y.squaredNorm();
  }
  for (size_t k = 0; k < mem.size(); ++k) {
    const double beta = mem[k].rho * mem[k].y.dot(q);
    q += (alpha[k] - beta) * mem[k].s;
  }
  return -q;
}

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& objective, Eigen::VectorXd x0,
                           const LbfgsOptions& opt) {
  LbfgsResult res;
  res.x = std::move(x0);
  Eigen::VectorXd g(res.x.size());
  if (!objective(res.x, res.value, g))
    throw std::invalid_argument("minimize_lbfgs: inadmissible starting point");
  res.evaluations = 1;
  res.gradient_sup = g.size() ? g.lpNorm<Eigen::Infinity>() : 0.0;

  std::deque<Pair> mem;
  Eigen::VectorXd x_trial(res.x.size());
  Eigen::VectorXd g_trial(res.x.size());
  bool just_reset = false;

  while (res.gradient_sup > opt.gradient_tolerance &&
         res.iterations < opt.max_iterations) {
    Eigen::VectorXd d = two_loop(mem, g);
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      mem.clear();
      d = -g;
      slope = g.dot(d);
    }
    double alpha = 1.0;
    if (mem.empty()) {
      // No curvature information yet: take a unit-length step.
      alpha = 1.0 / d.norm();
    }
    const double dmax = d.lpNorm<Eigen::Infinity>();
    if (alpha * dmax > opt.max_step)
      alpha = opt.max_step / dmax;

    double f_trial = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_trial = res.x + alpha * d;
      ++res.evaluations;
      if (objective(x_trial, f_trial, g_trial) &&
          f_trial <= res.value + opt.armijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= opt.backtrack;
    }

    if (!accepted) {
      if (just_reset || mem.empty())
        break;
      mem.clear();
      just_reset = true;
      continue;
    }
    just_reset = false;

    Pair p{x_trial - res.x, g_trial - g, 0.0};
    const double sy = p.s.dot(p.y);
    if (sy > 1e-12 * p.s.norm() * p.y.norm()) {
      p.rho = 1.0 / sy;
      mem.push_back(std::move(p));
      if (static_cast<int>(mem.size()) > opt.memory)
        mem.pop_front();
    }
    res.x.swap(x_trial);
    g.swap(g_trial);
    res.value = f_trial;
    res.gradient_sup = g.lpNorm<Eigen::Infinity>();
    ++res.iterations;
  }
  res.converged = res.gradient_sup <= opt.gradient_tolerance;
  return res;
}

}  // namespace accrete
