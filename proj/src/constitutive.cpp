// SPDX-License-Identifier: Apache-2.0

#include "accrete/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "accrete/errors.hpp"

namespace accrete {

namespace {

Mat2 green_strain(const Mat2& F) {
  return F.transpose() * F - Mat2::Identity();
}

double checked_det(const Mat2& F, const char* who) {
  const double j = F.determinant();
  if (!(j > 0.0)) {
    std::ostringstream os;
    os << who << ": orientation violated (det F = " << j << ")";
    throw InadmissibleState(os.str());
  }
  return j;
}

}  // namespace

double min_determinant_exponent(double p) {
  constexpr double d = 2.0;
  return p * d / (p - d);
}

void validate(const MaterialParams& m) {
  if (!(m.p > 2.0))
    throw ConfigError("hypothesis (H1) violated: p must exceed d = 2");
  if (!(m.q > min_determinant_exponent(m.p))) {
    std::ostringstream os;
    os << "hypothesis (H6) violated: q = " << m.q
       << " must exceed p*d/(p-d) = " << min_determinant_exponent(m.p);
    throw ConfigError(os.str());
  }
  if (!(m.c_W > 0.0) || !(m.c_J > 0.0) || !(m.c_H > 0.0) || !(m.c_R > 0.0))
    throw ConfigError("moduli c_W, c_J, c_H, c_R must be positive");
  if (!(m.eps_H >= 0.0))
    throw ConfigError("eps_H must be nonnegative");
  if (!(m.delta > 0.0 && m.delta < 1.0))
    throw ConfigError("fictitious compliance delta must lie in (0,1)");
  if (!(m.c_gamma > 0.0) || !(m.c_gamma <= m.C_gamma))
    throw ConfigError(
        "hypothesis (H14) violated: speed bounds must satisfy "
        "0 < c_gamma <= C_gamma");
  if (!(m.gamma0 >= m.c_gamma && m.gamma0 <= m.C_gamma))
    throw ConfigError(
        "hypothesis (H14) violated: gamma0 must lie in [c_gamma, C_gamma]");
  if (!(m.kappa >= 0.0))
    throw ConfigError("kappa must be nonnegative");
}

double W(const MaterialParams& m, const Mat2& F) {
  return 0.25 * m.c_W * green_strain(F).squaredNorm();
}

Mat2 DW(const MaterialParams& m, const Mat2& F) {
  return m.c_W * F * green_strain(F);
}

double VJ(const MaterialParams& m, const Mat2& F) {
  const double j = checked_det(F, "VJ");
  return m.c_J * std::pow(j, -m.q);
}

Mat2 DVJ(const MaterialParams& m, const Mat2& F) {
  const double j = checked_det(F, "DVJ");
  // d(det F)/dF = det F * F^-T
  Mat2 cof;
  cof << F(1, 1), -F(1, 0), -F(0, 1), F(0, 0);
  return -m.q * m.c_J * std::pow(j, -m.q - 1.0) * cof;
}

double H2nd(const MaterialParams& m, const Tensor3& G) {
  const double s = m.eps_H * m.eps_H + G.squared_norm();
  return m.c_H / m.p * std::pow(s, 0.5 * m.p);
}

Tensor3 DH(const MaterialParams& m, const Tensor3& G) {
  const double s = m.eps_H * m.eps_H + G.squared_norm();
  if (s == 0.0)
    return Tensor3{};
  return (m.c_H * std::pow(s, 0.5 * (m.p - 2.0))) * G;
}

Mat2 viscosity_apply(const MaterialParams& m, const Mat2& /*C*/,
                     const Mat2& Cdot) {
  return 0.5 * m.c_R * Cdot;
}

double R(const MaterialParams& m, const Mat2& F, const Mat2& Fdot) {
  const Mat2 cdot = Fdot.transpose() * F + F.transpose() * Fdot;
  const Mat2 c = F.transpose() * F;
  return 0.5 * (cdot.array() * viscosity_apply(m, c, cdot).array()).sum();
}

Mat2 dRdFdot(const MaterialParams& m, const Mat2& F, const Mat2& Fdot) {
  const Mat2 cdot = Fdot.transpose() * F + F.transpose() * Fdot;
  const Mat2 c = F.transpose() * F;
  return 2.0 * F * viscosity_apply(m, c, cdot);
}

double gamma(const MaterialParams& m, const Mat2& F) {
  checked_det(F, "gamma");
  if (m.kappa == 0.0)
    return m.gamma0;
  const double e2 = green_strain(F).squaredNorm();
  return m.c_gamma + (m.gamma0 - m.c_gamma) * std::exp(-m.kappa * e2);
}

GrowthLaw default_growth_law(const MaterialParams& m) {
  return [m](const Mat2& F) { return gamma(m, F); };
}

double growth_lipschitz_bound(const MaterialParams& m) {
  if (m.kappa == 0.0 || m.gamma0 == m.c_gamma)
    return 0.0;
  // |D gamma(F)| = 4 kappa (gamma0 - c) exp(-kappa |E|^2) |F E| with
  // E = F^T F - I, and |F|^2 = tr(E) + 2 <= sqrt(2)|E| + 2.
  const double amp = m.gamma0 - m.c_gamma;
  const double s_max = 10.0 / std::sqrt(m.kappa) + 10.0;
  double best = 0.0;
  constexpr int samples = 200000;
  for (int k = 0; k <= samples; ++k) {
    const double s = s_max * k / samples;
    const double fnorm = std::sqrt(std::sqrt(2.0) * s + 2.0);
    best = std::max(best, 4.0 * m.kappa * amp * std::exp(-m.kappa * s * s) *
                              fnorm * s);
  }
  return best * 1.01;
}

double h_switch(double sigma, double delta) {
  return sigma <= 0.0 ? 1.0 : delta;
}

std::vector<std::pair<std::string, double>> describe(const MaterialParams& m) {
  return {{"p", m.p},         {"q", m.q},         {"c_W", m.c_W},
          {"c_J", m.c_J},     {"c_H", m.c_H},     {"eps_H", m.eps_H},
          {"c_R", m.c_R},     {"delta", m.delta}, {"c_gamma", m.c_gamma},
          {"C_gamma", m.C_gamma}, {"gamma0", m.gamma0}, {"kappa", m.kappa}};
}

}  // namespace accrete
