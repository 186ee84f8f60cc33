// SPDX-License-Identifier: Apache-2.0

#include "accrete/eikonal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace accrete {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using HeapItem = std::pair<double, int>;
using MinHeap =
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

enum class State : std::uint8_t { kFar, kTrial, kKnown };

}  // namespace

SpeedField SpeedField::constant(const Grid& grid, double speed) {
  SpeedField s;
  s.values.assign(grid.size(), speed);
  s.c_gamma = speed;
  s.C_gamma = speed;
  return s;
}

void SpeedField::check(const Grid& grid) const {
  if (static_cast<int>(values.size()) != grid.size())
    throw std::invalid_argument("speed field size does not match the grid");
  if (!(c_gamma > 0.0) || !(c_gamma <= C_gamma))
    throw std::invalid_argument("speed bounds must satisfy 0 < c <= C");
  for (double v : values) {
    if (!(v >= c_gamma && v <= C_gamma)) {
      std::ostringstream os;
      os << "speed value " << v << " outside [" << c_gamma << ", " << C_gamma
         << "]";
      throw std::invalid_argument(os.str());
    }
  }
}

double ThetaField::max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

ThetaField solve_fmm(const SpeedField& speed, const Grid& grid) {
  speed.check(grid);
  const int nx = grid.nx();
  const int ny = grid.ny();
  const double h = grid.h();

  ThetaField theta;
  theta.values.assign(grid.size(), kInf);
  theta.accepted_order.reserve(grid.size());
  std::vector<State> state(grid.size(), State::kFar);
  MinHeap heap;

  auto known_value = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= nx || j >= ny)
      return kInf;
    const int m = grid.index(i, j);
    return state[m] == State::kKnown ? theta.values[m] : kInf;
  };

  auto update = [&](int m) {
    const int i = grid.col(m);
    const int j = grid.row(m);
    double a = std::min(known_value(i - 1, j), known_value(i + 1, j));
    double b = std::min(known_value(i, j - 1), known_value(i, j + 1));
    if (a > b)
      std::swap(a, b);
    const double s = h / speed.values[m];
    double t;
    if (b == kInf || b - a >= s)
      t = a + s;
    else
      t = 0.5 * (a + b + std::sqrt(2.0 * s * s - (a - b) * (a - b)));
    if (t < theta.values[m]) {
      theta.values[m] = t;
      state[m] = State::kTrial;
      heap.emplace(t, m);
    }
  };

  auto accept = [&](int n) {
    state[n] = State::kKnown;
    theta.accepted_order.push_back(n);
    const int i = grid.col(n);
    const int j = grid.row(n);
    const std::array<std::pair<int, int>, 4> nbrs{
        {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}}};
    for (auto [a, b] : nbrs) {
      if (a < 0 || b < 0 || a >= nx || b >= ny)
        continue;
      const int m = grid.index(a, b);
      if (state[m] != State::kKnown)
        update(m);
    }
  };

  for (int n = 0; n < grid.size(); ++n) {
    if (grid.in_omega0(n)) {
      theta.values[n] = 0.0;
      state[n] = State::kKnown;
    }
  }
  if (std::none_of(state.begin(), state.end(),
                   [](State s) { return s == State::kKnown; }))
    throw std::invalid_argument("solve_fmm: the initial body has no node");
  for (int n = 0; n < grid.size(); ++n)
    if (grid.in_omega0(n))
      accept(n);

  while (!heap.empty()) {
    const auto [v, n] = heap.top();
    heap.pop();
    if (state[n] == State::kKnown || v != theta.values[n])
      continue;
    accept(n);
  }

  if (std::any_of(state.begin(), state.end(),
                  [](State s) { return s != State::kKnown; }))
    throw std::runtime_error(
        "solve_fmm: heap exhausted before every node was reached");
  return theta;
}

ThetaField dijkstra_oracle(const SpeedField& speed, const Grid& grid) {
  speed.check(grid);
  static constexpr std::array<std::pair<int, int>, 16> kMoves{{
      {1, 0}, {-1, 0}, {0, 1}, {0, -1},
      {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
      {1, 2}, {2, 1}, {-1, 2}, {-2, 1},
      {1, -2}, {2, -1}, {-1, -2}, {-2, -1},
  }};
  const double h = grid.h();

  ThetaField theta;
  theta.values.assign(grid.size(), kInf);
  std::vector<char> done(grid.size(), 0);
  MinHeap heap;
  for (int n = 0; n < grid.size(); ++n) {
    if (grid.in_omega0(n)) {
      theta.values[n] = 0.0;
      heap.emplace(0.0, n);
    }
  }
  if (heap.empty())
    throw std::invalid_argument("dijkstra_oracle: the initial body has no node");

  while (!heap.empty()) {
    const auto [v, n] = heap.top();
    heap.pop();
    if (done[n] || v != theta.values[n])
      continue;
    done[n] = 1;
    theta.accepted_order.push_back(n);
    const int i = grid.col(n);
    const int j = grid.row(n);
    const double slow_n = 1.0 / speed.values[n];
    for (auto [di, dj] : kMoves) {
      const int a = i + di;
      const int b = j + dj;
      if (a < 0 || b < 0 || a >= grid.nx() || b >= grid.ny())
        continue;
      const int m = grid.index(a, b);
      if (done[m])
        continue;
      const double len = h * std::sqrt(static_cast<double>(di * di + dj * dj));
      const double w = len * 0.5 * (slow_n + 1.0 / speed.values[m]);
      if (v + w < theta.values[m]) {
        theta.values[m] = v + w;
        heap.emplace(v + w, m);
      }
    }
  }
  if (std::any_of(done.begin(), done.end(), [](char d) { return !d; }))
    throw std::runtime_error(
        "dijkstra_oracle: heap exhausted before every node was reached");
  return theta;
}

double upwind_gradient_norm(const ThetaField& theta, const Grid& grid, int n) {
  const int i = grid.col(n);
  const int j = grid.row(n);
  if (i == 0 || j == 0 || i == grid.nx() - 1 || j == grid.ny() - 1)
    throw std::invalid_argument("upwind_gradient_norm: boundary node");
  const double h = grid.h();
  const double t = theta[n];
  const double dx = std::max({(t - theta[grid.index(i - 1, j)]) / h,
                              (t - theta[grid.index(i + 1, j)]) / h, 0.0});
  const double dy = std::max({(t - theta[grid.index(i, j - 1)]) / h,
                              (t - theta[grid.index(i, j + 1)]) / h, 0.0});
  return std::hypot(dx, dy);
}

std::string BoundReport::summary() const {
  std::ostringstream os;
  os << "distance violations " << distance_violations << " (worst lower "
     << worst_lower << ", worst upper " << worst_upper << ", tol "
     << distance_tolerance << "); gradient violations " << gradient_violations
     << " of " << checked_gradient_nodes << " (range [" << min_gradient << ", "
     << max_gradient << "], tol " << gradient_tolerance << ")";
  return os.str();
}

BoundReport check_bounds(const ThetaField& theta, const Grid& grid,
                         double c_gamma, double C_gamma) {
  BoundReport rep;
  const double h = grid.h();
  const auto& omega0 = grid.spec().omega0;
  rep.distance_tolerance = 3.0 * h / c_gamma;
  const double ell = std::min(grid.spec().lx, grid.spec().ly);
  rep.gradient_tolerance = (h / ell) / c_gamma;
  rep.min_gradient = kInf;
  rep.max_gradient = 0.0;

  auto flag = [&](int n) {
    if (rep.flagged_nodes.empty() || rep.flagged_nodes.back() != n)
      rep.flagged_nodes.push_back(n);
  };

  for (int n = 0; n < grid.size(); ++n) {
    if (grid.in_omega0(n)) {
      if (theta[n] != 0.0) {
        ++rep.distance_violations;
        flag(n);
      }
      continue;
    }
    const double dist = omega0.distance(grid.point(n));
    const double lower = dist / C_gamma - rep.distance_tolerance - theta[n];
    const double upper = theta[n] - dist / c_gamma - rep.distance_tolerance;
    rep.worst_lower = std::max(rep.worst_lower, lower);
    rep.worst_upper = std::max(rep.worst_upper, upper);
    if (lower > 0.0 || upper > 0.0 || !(theta[n] > 0.0)) {
      ++rep.distance_violations;
      flag(n);
    }

    if (grid.is_boundary(n) || !(dist > 2.0 * h))
      continue;
    const double g = upwind_gradient_norm(theta, grid, n);
    ++rep.checked_gradient_nodes;
    rep.min_gradient = std::min(rep.min_gradient, g);
    rep.max_gradient = std::max(rep.max_gradient, g);
    const double excess = std::max(1.0 / C_gamma - g, g - 1.0 / c_gamma);
    rep.worst_gradient = std::max(rep.worst_gradient, excess);
    if (excess > rep.gradient_tolerance) {
      ++rep.gradient_violations;
      flag(n);
    }
  }
  return rep;
}

NodeMask sublevel(const ThetaField& theta, double t) {
  NodeMask m(theta.values.size());
  for (size_t n = 0; n < m.size(); ++n)
    m[n] = theta.values[n] < t ? 1 : 0;
  return m;
}

double sup_distance(const ThetaField& a, const ThetaField& b) {
  double d = 0.0;
  for (size_t n = 0; n < a.values.size(); ++n)
    d = std::max(d, std::abs(a.values[n] - b.values[n]));
  return d;
}

}  // namespace accrete
