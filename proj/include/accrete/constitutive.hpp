// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "accrete/tensor.hpp"

namespace accrete {

/// Material moduli, exponents and growth-law parameters.
struct MaterialParams {
  double p = 4.0;  ///< second-gradient growth exponent, p > d = 2
  double q = 5.0;  ///< determinant exponent, q > p*d/(p-d)
  double c_W = 1.0;
  double c_J = 0.1;
  double c_H = 1e-4;
  double eps_H = 0.0;
  double c_R = 0.1;
  double delta = 1e-3;  ///< fictitious-medium compliance factor in (0,1)
  double c_gamma = 0.5;
  double C_gamma = 1.0;
  double gamma0 = 1.0;  ///< growth speed at zero strain
  double kappa = 0.0;   ///< strain sensitivity of the growth speed
};

/// Throws ConfigError naming the violated hypothesis.
void validate(const MaterialParams& params);

/// Lower bound on q for a given p in two dimensions: p*d/(p-d).
double min_determinant_exponent(double p);

// Stored energy of the accreting medium, W(F) = c_W/4 |F^T F - I|^2.
double W(const MaterialParams& m, const Mat2& F);
Mat2 DW(const MaterialParams& m, const Mat2& F);

// Orientation barrier V^J(F) = c_J (det F)^-q. Throws InadmissibleState for
// det F <= 0.
double VJ(const MaterialParams& m, const Mat2& F);
Mat2 DVJ(const MaterialParams& m, const Mat2& F);

// Second-gradient density H(G) = c_H/p (eps_H^2 + |G|^2)^(p/2).
double H2nd(const MaterialParams& m, const Tensor3& G);
Tensor3 DH(const MaterialParams& m, const Tensor3& G);

/// Dissipation density R(F, Fdot) = 1/2 Cdot : D Cdot with D = c_R/2 times
/// the identity on symmetric matrices and Cdot = Fdot^T F + F^T Fdot.
double R(const MaterialParams& m, const Mat2& F, const Mat2& Fdot);
Mat2 dRdFdot(const MaterialParams& m, const Mat2& F, const Mat2& Fdot);
/// The viscosity tensor applied to a symmetric rate, D(C) : Cdot.
Mat2 viscosity_apply(const MaterialParams& m, const Mat2& C, const Mat2& Cdot);

/// Growth speed as a function of the deformation gradient.
using GrowthLaw = std::function<double(const Mat2&)>;

/// gamma(F) = c_gamma + (gamma0 - c_gamma) exp(-kappa |F^T F - I|^2).
/// Throws InadmissibleState for det F <= 0.
double gamma(const MaterialParams& m, const Mat2& F);
GrowthLaw default_growth_law(const MaterialParams& m);

/// Global Lipschitz constant of the default growth law over GL+(2),
/// bounded from above by a fine one-dimensional maximisation.
double growth_lipschitz_bound(const MaterialParams& m);

/// Material switch: 1 in the accreting medium (sigma <= 0), delta in the
/// fictitious one (sigma > 0).
double h_switch(double sigma, double delta);

/// Echo of every parameter as key = value lines.
std::vector<std::pair<std::string, double>> describe(const MaterialParams& m);

}  // namespace accrete
