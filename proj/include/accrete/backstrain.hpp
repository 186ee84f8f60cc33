// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <span>
#include <vector>

#include "accrete/eikonal.hpp"
#include "accrete/geometry.hpp"

namespace accrete {

/// Backstrain A recorded at front arrival.
///
/// Each node carries the time slab k(x) with theta(x) in (t_{k-1}, t_k]
/// (0 on the initial body, kNever past the final time). During step i a
/// node holds A0 on the initial body, the gradient recorded at step k(x) if
/// k(x) <= i-1, and the identity otherwise.
class BackstrainField {
public:
  static constexpr int kNever = std::numeric_limits<int>::max();

  BackstrainField() = default;

  const Mat2& at(int n) const { return a_[n]; }
  int slab(int n) const { return slab_[n]; }
  bool frozen(int n) const { return frozen_[n]; }
  int size() const { return static_cast<int>(a_.size()); }
  std::span<const Mat2> values() const { return a_; }

  /// Nodes frozen by the most recent record_arrivals call.
  const std::vector<int>& last_arrivals() const { return last_arrivals_; }

private:
  friend BackstrainField init_backstrain(std::span<const Mat2>, const Grid&,
                                         const ThetaField&, double, int);
  friend void record_arrivals(BackstrainField&, int, std::span<const Mat2>);

  std::vector<Mat2> a_;
  std::vector<int> slab_;
  std::vector<char> frozen_;
  std::vector<int> last_arrivals_;
};

/// Slab index of an arrival time: 0 for theta == 0, k with theta in
/// ((k-1) tau, k tau] for 1 <= k <= n_steps, kNever beyond.
int slab_index(double theta, double tau, int n_steps);

/// A0 on the initial body (entries for other nodes are ignored), identity
/// elsewhere. Throws ConfigError if det A0 <= 0 on a body node.
BackstrainField init_backstrain(std::span<const Mat2> a0, const Grid& grid,
                                const ThetaField& theta, double tau,
                                int n_steps);

/// Freezes A = grad y^i at every node of slab i. Nodes already frozen are
/// left alone, so repeating a step is a no-op. Throws InternalError if an
/// arriving node has det grad y^i <= 0.
void record_arrivals(BackstrainField& field, int step,
                     std::span<const Mat2> grad_y);

/// F_e = grad y A^-1.
std::vector<Mat2> elastic_strain(const BackstrainField& field,
                                 std::span<const Mat2> grad_y);

}  // namespace accrete
