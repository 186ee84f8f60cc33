// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "accrete/constitutive.hpp"
#include "accrete/errors.hpp"
#include "accrete/harness.hpp"
#include "helpers.hpp"

using namespace accrete;

namespace {

const Mat2 I = Mat2::Identity();

Mat2 fd(const std::function<double(const Mat2&)>& f, const Mat2& x) {
  const double e = 1e-6;
  Mat2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat2 p = x, m = x;
      p(i, j) += e;
      m(i, j) -= e;
      g(i, j) = (f(p) - f(m)) / (2 * e);
    }
  return g;
}

Mat2 admissible(std::mt19937_64& r) {
  for (;;) {
    const Mat2 F = I + test::random_matrix(r, 0.6);
    const double d = F.determinant();
    if (d >= 0.2 && d <= 5.0)
      return F;
  }
}

}  // namespace

TEST_CASE("closed forms") {
  const MaterialParams m;
  CHECK(W(m, I) == 0.0);
  CHECK(DW(m, I).norm() == 0.0);
  CHECK(VJ(m, I) == m.c_J);
  CHECK(VJ(m, 2.0 * I) == doctest::Approx(m.c_J * std::pow(4.0, -m.q)));
  CHECK(H2nd(m, Tensor3{}) == 0.0);
  CHECK(DH(m, Tensor3{}).norm() == 0.0);
  CHECK(R(m, I, Mat2::Zero()) == 0.0);

  Mat2 F;
  F << 2, 0, 0, 1;
  // F^T F - I = diag(3, 0)
  CHECK(W(m, F) == doctest::Approx(m.c_W / 4 * 9));
  Mat2 expected;
  expected << m.c_W * 2 * 3, 0, 0, 0;
  CHECK((DW(m, F) - expected).norm() <= 1e-14);
}

TEST_CASE("derivatives match central differences at relative 1e-5") {
  const MaterialParams m;
  std::mt19937_64 r(11);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Mat2 F = admissible(r);
    const Mat2 Fd = test::random_matrix(r, 1.0);
    auto rel = [](const Mat2& a, const Mat2& b) {
      return (a - b).norm() / std::max(b.norm(), 1e-12);
    };
    worst = std::max(worst, rel(fd([&](const Mat2& x) { return W(m, x); }, F),
                                DW(m, F)));
    worst = std::max(worst, rel(fd([&](const Mat2& x) { return VJ(m, x); }, F),
                                DVJ(m, F)));
    worst = std::max(
        worst, rel(fd([&](const Mat2& x) { return R(m, F, x); }, Fd),
                   dRdFdot(m, F, Fd)));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("dR/dFdot equals 2 F D(C) Cdot") {
  const MaterialParams m;
  std::mt19937_64 r(3);
  for (int k = 0; k < 20; ++k) {
    const Mat2 F = admissible(r);
    const Mat2 Fd = test::random_matrix(r, 1.0);
    const Mat2 C = F.transpose() * F;
    const Mat2 Cd = Fd.transpose() * F + F.transpose() * Fd;
    CHECK((dRdFdot(m, F, Fd) - 2.0 * F * viscosity_apply(m, C, Cd)).norm() <=
          1e-12 * (1 + dRdFdot(m, F, Fd).norm()));
  }
}

TEST_CASE("growth law") {
  MaterialParams m;
  m.c_gamma = 0.5;
  m.C_gamma = 1.0;
  m.gamma0 = 1.0;
  m.kappa = 5.0;
  CHECK(gamma(m, I) == 1.0);
  Mat2 F;
  F << 1.5, 0.2, -0.1, 0.8;
  const double e2 = (F.transpose() * F - I).squaredNorm();
  CHECK(gamma(m, F) ==
        doctest::Approx(0.5 + 0.5 * std::exp(-5.0 * e2)).epsilon(1e-14));
  m.kappa = 0.0;
  CHECK(gamma(m, F) == m.gamma0);
  CHECK(default_growth_law(m)(F) == gamma(m, F));
  CHECK(growth_lipschitz_bound(m) == 0.0);
  Mat2 flip;
  flip << -1, 0, 0, 1;
  CHECK_THROWS(gamma(m, flip));
}

TEST_CASE("material switch is a hard step") {
  CHECK(h_switch(-0.1, 1e-3) == 1.0);
  CHECK(h_switch(0.0, 1e-3) == 1.0);
  CHECK(h_switch(1e-15, 1e-3) == 1e-3);
  CHECK(h_switch(5.0, 0.25) == 0.25);
}

TEST_CASE("parameter gates name the hypothesis") {
  CHECK(min_determinant_exponent(4.0) == doctest::Approx(4.0));
  MaterialParams m;
  CHECK_NOTHROW(validate(m));
  m.q = 3.0;
  try {
    validate(m);
    FAIL("q = 3 accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("(H6)") != std::string::npos);
  }
  m = MaterialParams{};
  m.delta = 1.5;
  CHECK_THROWS_AS(validate(m), ConfigError);
  m = MaterialParams{};
  m.p = 2.0;
  CHECK_THROWS_AS(validate(m), ConfigError);
  m = MaterialParams{};
  m.c_R = 0.0;
  CHECK_THROWS_AS(validate(m), ConfigError);
}

TEST_CASE("VJ rejects orientation reversal") {
  const MaterialParams m;
  Mat2 flip;
  flip << -1, 0, 0, 1;
  CHECK_THROWS_AS(VJ(m, flip), InadmissibleState);
}

TEST_CASE("hypothesis suite on defaults and on injected parameters") {
  const VerificationReport ok = verify_hypotheses(MaterialParams{}, 1);
  CHECK(ok.passed());
  CHECK(ok.checks.size() > 40);

  MaterialParams bad;
  bad.p = 4.0;
  bad.q = 3.0;
  const VerificationReport r = verify_hypotheses(bad, 1);
  CHECK_FALSE(r.passed());
  bool named = false;
  for (const Check& c : r.checks)
    if (!c.passed)
      named |= c.name.find("determinant exponent") != std::string::npos;
  CHECK(named);

  bad = MaterialParams{};
  bad.delta = 1.5;
  const VerificationReport d = verify_hypotheses(bad, 1);
  CHECK_FALSE(d.passed());
  for (const Check& c : d.checks)
    if (!c.passed)
      CHECK(c.name.find("delta") != std::string::npos);
}
