// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

namespace accrete {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Third-order tensor G(i,j,k) in two dimensions. For a second deformation
/// gradient, G(i,j,k) = d^2 y_i / dx_j dx_k.
class Tensor3 {
public:
  Tensor3() { data_.fill(0.0); }

  double& operator()(int i, int j, int k) { return data_[i * 4 + j * 2 + k]; }
  double operator()(int i, int j, int k) const {
    return data_[i * 4 + j * 2 + k];
  }

  double& operator[](int flat) { return data_[flat]; }
  double operator[](int flat) const { return data_[flat]; }

  static constexpr int size() { return 8; }

  /// Triple contraction G:.G' = sum G_ijk G'_ijk.
  double contract(const Tensor3& other) const {
    double s = 0.0;
    for (int a = 0; a < 8; ++a)
      s += data_[a] * other.data_[a];
    return s;
  }

  double squared_norm() const { return contract(*this); }
  double norm() const { return std::sqrt(squared_norm()); }

  Tensor3& operator+=(const Tensor3& o) {
    for (int a = 0; a < 8; ++a)
      data_[a] += o.data_[a];
    return *this;
  }
  Tensor3& operator-=(const Tensor3& o) {
    for (int a = 0; a < 8; ++a)
      data_[a] -= o.data_[a];
    return *this;
  }
  Tensor3& operator*=(double s) {
    for (double& v : data_)
      v *= s;
    return *this;
  }

  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

  /// (Q G)_ijk = Q_il G_ljk, i.e. a rotation acting on the first index.
  friend Tensor3 left_multiply(const Mat2& q, const Tensor3& g) {
    Tensor3 out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          out(i, j, k) = q(i, 0) * g(0, j, k) + q(i, 1) * g(1, j, k);
    return out;
  }

private:
  std::array<double, 8> data_;
};

inline Mat2 rotation(double angle) {
  Mat2 q;
  q << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return q;
}

}  // namespace accrete
