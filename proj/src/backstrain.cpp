// SPDX-License-Identifier: Apache-2.0

#include "accrete/backstrain.hpp"

#include <cmath>
#include <sstream>

#include "accrete/errors.hpp"

namespace accrete {

int slab_index(double theta, double tau, int n_steps) {
  if (theta <= 0.0)
    return 0;
  if (theta > n_steps * tau)
    return BackstrainField::kNever;
  int k = std::max(1, static_cast<int>(std::ceil(theta / tau)));
  // Settle rounding so that (k-1)*tau < theta <= k*tau with the same
  // arithmetic used for t_k elsewhere.
  while (k > 1 && theta <= (k - 1) * tau)
    --k;
  while (theta > k * tau)
    ++k;
  return k;
}

BackstrainField init_backstrain(std::span<const Mat2> a0, const Grid& grid,
                                const ThetaField& theta, double tau,
                                int n_steps) {
  if (static_cast<int>(a0.size()) != grid.size())
    throw std::invalid_argument("init_backstrain: A0 size mismatch");
  BackstrainField f;
  f.a_.assign(grid.size(), Mat2::Identity());
  f.slab_.resize(grid.size());
  f.frozen_.assign(grid.size(), 0);
  for (int n = 0; n < grid.size(); ++n) {
    if (grid.in_omega0(n)) {
      const double det = a0[n].determinant();
      if (!(det > 0.0) || !a0[n].allFinite()) {
        std::ostringstream os;
        os << "hypothesis (H13) violated: det A0 = " << det << " at node " << n;
        throw ConfigError(os.str());
      }
      f.a_[n] = a0[n];
      f.slab_[n] = 0;
      f.frozen_[n] = 1;
    } else {
      f.slab_[n] = slab_index(theta[n], tau, n_steps);
    }
  }
  return f;
}

void record_arrivals(BackstrainField& field, int step,
                     std::span<const Mat2> grad_y) {
  std::vector<int> arrived;
  for (int n = 0; n < field.size(); ++n) {
    if (field.slab_[n] != step || field.frozen_[n])
      continue;
    const double det = grad_y[n].determinant();
    if (!(det > 0.0)) {
      std::ostringstream os;
      os << "record_arrivals: det grad y = " << det << " at arriving node "
         << n << " in step " << step;
      throw InternalError(os.str());
    }
    field.a_[n] = grad_y[n];
    field.frozen_[n] = 1;
    arrived.push_back(n);
  }
  field.last_arrivals_ = std::move(arrived);
}

std::vector<Mat2> elastic_strain(const BackstrainField& field,
                                 std::span<const Mat2> grad_y) {
  std::vector<Mat2> fe(grad_y.size());
  for (size_t n = 0; n < grad_y.size(); ++n)
    fe[n] = grad_y[n] * field.at(static_cast<int>(n)).inverse();
  return fe;
}

}  // namespace accrete
