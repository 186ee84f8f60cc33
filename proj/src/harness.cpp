// SPDX-License-Identifier: Apache-2.0

#include "accrete/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "accrete/coupling.hpp"
#include "accrete/eikonal.hpp"
#include "accrete/equilibrium.hpp"
#include "accrete/errors.hpp"
#include "accrete/io.hpp"

namespace accrete {

const char* to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::kAnalytic: return "analytic";
    case CheckKind::kOracle: return "oracle";
    case CheckKind::kProperty: return "property";
    case CheckKind::kMonitor: return "monitor";
    case CheckKind::kControl: return "control";
  }
  return "?";
}

bool VerificationReport::passed() const { return failures() == 0; }

int VerificationReport::failures() const {
  return static_cast<int>(std::count_if(
      checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string VerificationReport::json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["passed"] = passed();
  j["failures"] = failures();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["measured"] = std::isfinite(c.measured)
                        ? nlohmann::ordered_json(c.measured)
                        : nlohmann::ordered_json(format_double(c.measured));
    e["tolerance"] = c.tolerance;
    e["kind"] = to_string(c.kind);
    if (!c.detail.empty())
      e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  return j.dump(2);
}

std::string VerificationReport::text() const {
  std::ostringstream os;
  os << "suite " << suite << ", seed " << seed << '\n';
  for (const Check& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured "
       << format_double(c.measured) << "  tolerance "
       << format_double(c.tolerance) << "  [" << to_string(c.kind) << "]";
    if (!c.detail.empty())
      os << "  " << c.detail;
    os << '\n';
  }
  os << (passed() ? "all checks passed" : std::to_string(failures()) +
                                              " check(s) failed")
     << " (" << checks.size() << " checks)\n";
  return os.str();
}

// ===========================================================================
// Constitutive suite

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& r, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(r);
}

/// Random F = Q1 diag(s1, s2) Q2 with log-uniform singular values.
Mat2 random_f(Rng& r, double smin, double smax) {
  const double s1 = std::exp(uniform(r, std::log(smin), std::log(smax)));
  const double s2 = std::exp(uniform(r, std::log(smin), std::log(smax)));
  Mat2 d = Mat2::Zero();
  d(0, 0) = s1;
  d(1, 1) = s2;
  return rotation(uniform(r, 0, 2 * M_PI)) * d *
         rotation(uniform(r, 0, 2 * M_PI));
}

Mat2 random_matrix(Rng& r, double scale) {
  Mat2 m;
  m << uniform(r, -scale, scale), uniform(r, -scale, scale),
      uniform(r, -scale, scale), uniform(r, -scale, scale);
  return m;
}

Mat2 random_symmetric(Rng& r) {
  Mat2 m = random_matrix(r, 1.0);
  return 0.5 * (m + m.transpose());
}

Tensor3 random_tensor(Rng& r, double scale) {
  Tensor3 g;
  for (int a = 0; a < 8; ++a)
    g[a] = uniform(r, -scale, scale);
  return g;
}

struct Laws {
  std::function<double(const Mat2&)> W;
  std::function<Mat2(const Mat2&)> DW;
  std::function<double(const Mat2&)> VJ;
  std::function<Mat2(const Mat2&)> DVJ;
  std::function<double(const Tensor3&)> H;
  std::function<Tensor3(const Tensor3&)> DH;
  std::function<double(const Mat2&, const Mat2&)> R;
  std::function<Mat2(const Mat2&, const Mat2&)> DR;
  std::function<Mat2(const Mat2&, const Mat2&)> visc;
  std::function<double(const Mat2&)> gamma;
  std::function<double(double)> h;
};

Laws default_laws(const MaterialParams& m) {
  Laws l;
  l.W = [m](const Mat2& F) { return W(m, F); };
  l.DW = [m](const Mat2& F) { return DW(m, F); };
  l.VJ = [m](const Mat2& F) { return VJ(m, F); };
  l.DVJ = [m](const Mat2& F) { return DVJ(m, F); };
  l.H = [m](const Tensor3& G) { return H2nd(m, G); };
  l.DH = [m](const Tensor3& G) { return DH(m, G); };
  l.R = [m](const Mat2& F, const Mat2& Fd) { return R(m, F, Fd); };
  l.DR = [m](const Mat2& F, const Mat2& Fd) { return dRdFdot(m, F, Fd); };
  l.visc = [m](const Mat2& C, const Mat2& Cd) {
    return viscosity_apply(m, C, Cd);
  };
  l.gamma = [m](const Mat2& F) { return gamma(m, F); };
  l.h = [m](double s) { return h_switch(s, m.delta); };
  return l;
}

struct Outcome {
  double measured = 0.0;
  bool passed = false;
};

using LawCheck = std::function<Outcome(const Laws&, Rng&)>;

/// Adds the check on the real laws and its control on the mutant.
void paired(VerificationReport& rep, std::uint64_t seed,
            const std::string& name, CheckKind kind, double tol,
            const Laws& laws, const LawCheck& check, const Laws& mutant,
            const std::string& mutation) {
  auto run = [&](const Laws& l) {
    Rng r(seed);
    try {
      return check(l, r);
    } catch (const std::exception&) {
      return Outcome{NAN, false};
    }
  };
  const Outcome real = run(laws);
  rep.add({name, real.passed, real.measured, tol, kind, ""});
  const Outcome broken = run(mutant);
  rep.add({name + " detects a broken law", !broken.passed, broken.measured,
           tol, CheckKind::kControl, "mutant: " + mutation});
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Relative error of an analytic matrix derivative against central
/// differences of `f` with step 1e-6.
double fd_error(const std::function<double(const Mat2&)>& f, const Mat2& x,
                const Mat2& analytic) {
  constexpr double e = 1e-6;
  Mat2 fd;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat2 p = x, q = x;
      p(i, j) += e;
      q(i, j) -= e;
      fd(i, j) = (f(p) - f(q)) / (2 * e);
    }
  return (fd - analytic).norm() / std::max(analytic.norm(), 1e-12);
}

double fd_error(const std::function<double(const Tensor3&)>& f,
                const Tensor3& x, const Tensor3& analytic) {
  constexpr double e = 1e-6;
  Tensor3 fd;
  for (int a = 0; a < 8; ++a) {
    Tensor3 p = x, q = x;
    p[a] += e;
    q[a] -= e;
    fd[a] = (f(p) - f(q)) / (2 * e);
  }
  return (fd - analytic).norm() / std::max(analytic.norm(), 1e-12);
}

Outcome at_most(double measured, double tol) {
  return {measured, measured <= tol};
}

void parameter_checks(VerificationReport& rep, const MaterialParams& m) {
  auto add = [&](const std::string& name, bool ok, double measured,
                 double tol) {
    rep.add({name, ok, measured, tol, CheckKind::kAnalytic, ""});
  };
  add("growth exponent p exceeds the dimension", m.p > 2.0, m.p, 2.0);
  const double qmin = m.p > 2.0 ? min_determinant_exponent(m.p) : INFINITY;
  add("determinant exponent q exceeds p d / (p - d)", m.q > qmin, m.q, qmin);
  add("compliance factor delta lies in (0, 1)", m.delta > 0.0 && m.delta < 1.0,
      m.delta, 1.0);
  const double mod = std::min({m.c_W, m.c_J, m.c_H, m.c_R});
  add("moduli c_W, c_J, c_H, c_R are positive", mod > 0.0, mod, 0.0);
  add("speed bounds satisfy 0 < c_gamma <= gamma0 <= C_gamma",
      m.c_gamma > 0.0 && m.c_gamma <= m.gamma0 && m.gamma0 <= m.C_gamma,
      m.gamma0, m.C_gamma);
  add("strain sensitivity kappa is nonnegative", m.kappa >= 0.0, m.kappa, 0.0);

  // Controls: each gate must reject a mutated parameter set.
  auto control = [&](const std::string& name, const MaterialParams& bad,
                     bool rejected, double measured, double tol) {
    (void)bad;
    rep.add({name, rejected, measured, tol, CheckKind::kControl, ""});
  };
  MaterialParams bad = m;
  bad.p = 4.0;
  bad.q = 3.0;
  control("q = 3 with p = 4 is rejected by the determinant exponent gate",
          bad, !(bad.q > min_determinant_exponent(bad.p)), bad.q,
          min_determinant_exponent(bad.p));
  bad = m;
  bad.delta = 1.5;
  control("delta = 1.5 is rejected by the compliance range gate", bad,
          !(bad.delta > 0.0 && bad.delta < 1.0), bad.delta, 1.0);
  bad = m;
  bad.p = 2.0;
  control("p = 2 is rejected by the growth exponent gate", bad, !(bad.p > 2.0),
          bad.p, 2.0);
  bad = m;
  bad.c_gamma = m.C_gamma * 1.5;
  control("c_gamma above C_gamma is rejected by the speed bound gate", bad,
          !(bad.c_gamma <= bad.gamma0 && bad.gamma0 <= bad.C_gamma),
          bad.c_gamma, bad.C_gamma);
}

}  // namespace

VerificationReport verify_hypotheses(const MaterialParams& m,
                                     std::uint64_t seed) {
  VerificationReport rep;
  rep.suite = "hypotheses";
  rep.seed = seed;
  parameter_checks(rep, m);

  const Laws L = default_laws(m);
  auto mutate = [&](auto&& edit) {
    Laws x = L;
    edit(x);
    return x;
  };

  // --- W -------------------------------------------------------------------
  paired(
      rep, seed, "W(I) = 0 and DW(I) = 0", CheckKind::kAnalytic, 1e-14, L,
      [](const Laws& l, Rng&) {
        const Mat2 I = Mat2::Identity();
        return at_most(std::abs(l.W(I)) + l.DW(I).norm(), 1e-14);
      },
      mutate([&](Laws& x) {
        x.W = [w = L.W](const Mat2& F) { return w(F) + 0.01; };
      }),
      "W + 0.01");

  paired(
      rep, seed, "W is nonnegative with its minimum at I (10^4 samples)",
      CheckKind::kProperty, 0.0, L,
      [](const Laws& l, Rng& r) {
        double lowest = INFINITY;
        for (int k = 0; k < 10000; ++k) {
          const Mat2 F = k % 2 ? random_f(r, 0.05, 3.0)
                               : Mat2(Mat2::Identity() + random_matrix(r, 0.05));
          lowest = std::min(lowest, l.W(F) - l.W(Mat2::Identity()));
        }
        return Outcome{lowest, lowest >= 0.0};
      },
      mutate([&](Laws& x) {
        x.W = [w = L.W](const Mat2& F) { return w(F) - 0.1 * (F.trace() - 2); };
      }),
      "W - 0.1 (tr F - 2)");

  auto break_frame = mutate([&](Laws& x) {
    x.W = [w = L.W](const Mat2& F) { return w(F) + 0.1 * F(0, 0) * F(0, 0); };
  });
  paired(
      rep, seed, "W(QF) = W(F) for rotations Q (frame indifference)",
      CheckKind::kProperty, 1e-12, L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
          const Mat2 F = random_f(r, 0.2, 3.0);
          const Mat2 Q = rotation(uniform(r, 0, 2 * M_PI));
          worst = std::max(worst, std::abs(l.W(Q * F) - l.W(F)) /
                                      std::max(1.0, l.W(F)));
        }
        return at_most(worst, 1e-12);
      },
      break_frame, "W + 0.1 F11^2");
  paired(
      rep, seed, "W(FQ) = W(F) for rotations Q (isotropy)",
      CheckKind::kProperty, 1e-12, L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
          const Mat2 F = random_f(r, 0.2, 3.0);
          const Mat2 Q = rotation(uniform(r, 0, 2 * M_PI));
          worst = std::max(worst, std::abs(l.W(F * Q) - l.W(F)) /
                                      std::max(1.0, l.W(F)));
        }
        return at_most(worst, 1e-12);
      },
      break_frame, "W + 0.1 F11^2");

  paired(
      rep, seed, "W(F) <= c_W (|F|^4 + 1) (growth)", CheckKind::kProperty,
      m.c_W, L,
      [c = m.c_W](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
          const Mat2 F = random_f(r, 0.05, 30.0);
          worst = std::max(worst, l.W(F) / (std::pow(F.norm(), 4) + 1.0));
        }
        return at_most(worst, c);
      },
      mutate([&](Laws& x) {
        x.W = [w = L.W](const Mat2& F) { return w(F) + std::pow(F.norm(), 6); };
      }),
      "W + |F|^6");

  paired(
      rep, seed, "DW matches central differences (50 samples)",
      CheckKind::kOracle, 1e-6, L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
          const Mat2 F = random_f(r, 0.3, 3.0);
          worst = std::max(worst, fd_error(l.W, F, l.DW(F)));
        }
        return at_most(worst, 1e-6);
      },
      mutate([&](Laws& x) {
        x.DW = [d = L.DW](const Mat2& F) { return Mat2(1.01 * d(F)); };
      }),
      "1.01 DW");

  // --- V^J -----------------------------------------------------------------
  paired(
      rep, seed, "V^J(I) = c_J and V^J(2I) = c_J 4^-q", CheckKind::kAnalytic,
      1e-14, L,
      [c = m.c_J, q = m.q](const Laws& l, Rng&) {
        const Mat2 I = Mat2::Identity();
        const double e = std::max(rel(l.VJ(I), c),
                                  rel(l.VJ(2.0 * I), c * std::pow(4.0, -q)));
        return at_most(e, 1e-14);
      },
      mutate([&](Laws& x) {
        x.VJ = [v = L.VJ](const Mat2& F) { return v(F) * F.determinant(); };
      }),
      "V^J det F");

  paired(
      rep, seed, "V^J(F) (det F)^q = c_J (1000 samples)",
      CheckKind::kProperty, 1e-12, L,
      [c = m.c_J, q = m.q](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
          const Mat2 F = random_f(r, 0.3, 3.0);
          worst = std::max(worst,
                           rel(l.VJ(F) * std::pow(F.determinant(), q), c));
        }
        return at_most(worst, 1e-12);
      },
      mutate([&](Laws& x) {
        x.VJ = [v = L.VJ](const Mat2& F) {
          return v(F) * std::sqrt(F.determinant());
        };
      }),
      "V^J sqrt(det F)");

  paired(
      rep, seed, "DV^J matches central differences (det F in [0.2, 5])",
      CheckKind::kOracle, 1e-6, L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        int done = 0;
        while (done < 50) {
          const Mat2 F = random_f(r, 0.2, 5.0);
          const double d = F.determinant();
          if (d < 0.2 || d > 5.0)
            continue;
          worst = std::max(worst, fd_error(l.VJ, F, l.DVJ(F)));
          ++done;
        }
        return at_most(worst, 1e-6);
      },
      mutate([&](Laws& x) {
        x.DVJ = [d = L.DVJ](const Mat2& F) { return Mat2(d(F).transpose()); };
      }),
      "DV^J transposed");

  // --- H -------------------------------------------------------------------
  paired(
      rep, seed, "H(0) = 0 and DH(0) = 0", CheckKind::kAnalytic, 1e-14, L,
      [eps = m.eps_H, c = m.c_H, p = m.p](const Laws& l, Rng&) {
        const Tensor3 z;
        // With eps_H > 0, H(0) = c_H eps^p / p is the expected offset.
        const double h0 = eps > 0.0 ? c * std::pow(eps, p) / p : 0.0;
        return at_most(std::abs(l.H(z) - h0) + l.DH(z).norm(), 1e-14);
      },
      mutate([&](Laws& x) {
        x.H = [h = L.H](const Tensor3& G) { return h(G) + 1e-3; };
      }),
      "H + 1e-3");

  paired(
      rep, seed, "H(QG) = H(G) for rotations acting on the first index",
      CheckKind::kProperty, 1e-12, L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
          const Tensor3 G = random_tensor(r, 2.0);
          const Mat2 Q = rotation(uniform(r, 0, 2 * M_PI));
          worst = std::max(worst, std::abs(l.H(left_multiply(Q, G)) - l.H(G)) /
                                      std::max(1.0, l.H(G)));
        }
        return at_most(worst, 1e-12);
      },
      mutate([&](Laws& x) {
        x.H = [h = L.H](const Tensor3& G) {
          return h(G) + 0.1 * G(0, 0, 0) * G(0, 0, 0);
        };
      }),
      "H + 0.1 G111^2");

  paired(
      rep, seed, "H(G) >= c_H |G|^p / p (coercivity)", CheckKind::kProperty,
      0.0, L,
      [c = m.c_H, p = m.p](const Laws& l, Rng& r) {
        double lowest = INFINITY;
        for (int k = 0; k < 1000; ++k) {
          const Tensor3 G = random_tensor(r, 3.0);
          const double lower = c * std::pow(G.norm(), p) / p;
          lowest = std::min(lowest, (l.H(G) - lower) / std::max(lower, 1e-300));
        }
        return Outcome{lowest, lowest >= -1e-14};
      },
      mutate([&](Laws& x) {
        x.H = [h = L.H](const Tensor3& G) { return 0.5 * h(G); };
      }),
      "H / 2");

  paired(
      rep, seed, "DH matches central differences (50 samples)",
      CheckKind::kOracle, 1e-6, L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
          const Tensor3 G = random_tensor(r, 2.0);
          worst = std::max(worst, fd_error(l.H, G, l.DH(G)));
        }
        return at_most(worst, 1e-6);
      },
      mutate([&](Laws& x) {
        x.DH = [d = L.DH](const Tensor3& G) { return 1.01 * d(G); };
      }),
      "1.01 DH");

  paired(
      rep, seed, "DH is monotone on 100 random pairs", CheckKind::kProperty,
      0.0, L,
      [](const Laws& l, Rng& r) {
        double lowest = INFINITY;
        for (int k = 0; k < 100; ++k) {
          const Tensor3 G = random_tensor(r, 2.0), G2 = random_tensor(r, 2.0);
          lowest = std::min(lowest, (l.DH(G) - l.DH(G2)).contract(G - G2));
        }
        return Outcome{lowest, lowest >= 0.0};
      },
      mutate([&](Laws& x) {
        x.DH = [d = L.DH](const Tensor3& G) { return -1.0 * d(G); };
      }),
      "-DH");

  paired(
      rep, seed, "DH(G):G grows like |G|^p (log-log slope)",
      CheckKind::kProperty, 1e-2, L,
      [p = m.p](const Laws& l, Rng& r) {
        Tensor3 U = random_tensor(r, 1.0);
        U *= 1.0 / U.norm();
        // Least-squares slope over s in [10, 1000].
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = 21;
        for (int k = 0; k < n; ++k) {
          const double s = std::pow(10.0, 1.0 + 2.0 * k / (n - 1));
          const Tensor3 G = s * U;
          const double x = std::log(s), y = std::log(l.DH(G).contract(G));
          sx += x;
          sy += y;
          sxx += x * x;
          sxy += x * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        return at_most(std::abs(slope - p), 1e-2);
      },
      mutate([&](Laws& x) {
        x.DH = [d = L.DH](const Tensor3& G) {
          return (1.0 / std::max(G.norm(), 1e-300)) * d(G);
        };
      }),
      "DH / |G|");

  // --- R and the viscosity tensor ------------------------------------------
  auto break_rate = mutate([&](Laws& x) {
    x.R = [rr = L.R](const Mat2& F, const Mat2& Fd) {
      return rr(F, Fd) + 0.1 * Fd(0, 0) * Fd(0, 0) + 0.1 * Fd(0, 1) * Fd(0, 1);
    };
  });
  paired(
      rep, seed, "R(F, 0) = 0", CheckKind::kAnalytic, 1e-14, L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k)
          worst = std::max(worst, std::abs(l.R(random_f(r, 0.3, 3.0),
                                               Mat2::Zero())));
        return at_most(worst, 1e-14);
      },
      mutate([&](Laws& x) {
        x.R = [rr = L.R](const Mat2& F, const Mat2& Fd) {
          return rr(F, Fd) + 1e-3;
        };
      }),
      "R + 1e-3");
  paired(
      rep, seed, "R(I, S) = 0 for skew rates S", CheckKind::kAnalytic, 1e-14,
      L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
          const double w = uniform(r, -2, 2);
          Mat2 S;
          S << 0, -w, w, 0;
          worst = std::max(worst, std::abs(l.R(Mat2::Identity(), S)));
        }
        return at_most(worst, 1e-14);
      },
      break_rate, "R + 0.1 (Fdot11^2 + Fdot12^2)");
  paired(
      rep, seed, "R(QF, QFdot) = R(F, Fdot) for rotations Q",
      CheckKind::kProperty, 1e-12, L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
          const Mat2 F = random_f(r, 0.3, 3.0), Fd = random_matrix(r, 1.0);
          const Mat2 Q = rotation(uniform(r, 0, 2 * M_PI));
          worst = std::max(worst, std::abs(l.R(Q * F, Q * Fd) - l.R(F, Fd)) /
                                      std::max(1.0, l.R(F, Fd)));
        }
        return at_most(worst, 1e-12);
      },
      break_rate, "R + 0.1 (Fdot11^2 + Fdot12^2)");
  paired(
      rep, seed, "dR/dFdot matches central differences (50 samples)",
      CheckKind::kOracle, 1e-6, L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
          const Mat2 F = random_f(r, 0.3, 3.0), Fd = random_matrix(r, 1.0);
          worst = std::max(
              worst, fd_error([&](const Mat2& x) { return l.R(F, x); }, Fd,
                              l.DR(F, Fd)));
        }
        return at_most(worst, 1e-6);
      },
      mutate([&](Laws& x) {
        x.DR = [d = L.DR](const Mat2& F, const Mat2& Fd) {
          return Mat2(1.01 * d(F, Fd));
        };
      }),
      "1.01 dR/dFdot");
  paired(
      rep, seed, "viscosity tensor is symmetric", CheckKind::kProperty, 1e-12,
      L,
      [](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
          const Mat2 F = random_f(r, 0.3, 3.0);
          const Mat2 C = F.transpose() * F;
          const Mat2 A = random_symmetric(r), B = random_symmetric(r);
          const double ab = (A.array() * l.visc(C, B).array()).sum();
          const double ba = (B.array() * l.visc(C, A).array()).sum();
          worst = std::max(worst, std::abs(ab - ba) /
                                      std::max({std::abs(ab), 1.0}));
        }
        return at_most(worst, 1e-12);
      },
      mutate([&](Laws& x) {
        x.visc = [v = L.visc](const Mat2& C, const Mat2& Cd) {
          Mat2 e;
          e << 0, 1, 1, 0;
          return Mat2(v(C, Cd) + 0.1 * Cd(0, 0) * e);
        };
      }),
      "D(C) + 0.1 Cdot11 (e12 + e21)");
  paired(
      rep, seed, "viscosity tensor is coercive with constant c_R / 2",
      CheckKind::kProperty, m.c_R / 2, L,
      [c = m.c_R](const Laws& l, Rng& r) {
        double lowest = INFINITY;
        for (int k = 0; k < 1000; ++k) {
          const Mat2 F = random_f(r, 0.3, 3.0);
          const Mat2 C = F.transpose() * F;
          const Mat2 A = random_symmetric(r);
          lowest = std::min(lowest, (A.array() * l.visc(C, A).array()).sum() /
                                        A.squaredNorm());
        }
        return Outcome{lowest, lowest >= 0.5 * c * (1 - 1e-12)};
      },
      mutate([&](Laws& x) {
        x.visc = [v = L.visc, c = m.c_R](const Mat2& C, const Mat2& Cd) {
          return Mat2(v(C, Cd) - c * Cd.trace() * Mat2::Identity());
        };
      }),
      "D(C) - c_R tr(.) I");

  // --- growth law ----------------------------------------------------------
  paired(
      rep, seed, "c_gamma <= gamma(F) <= C_gamma (10^4 samples, det F in (0, 10])",
      CheckKind::kProperty, 0.0, L,
      [c = m.c_gamma, C = m.C_gamma](const Laws& l, Rng& r) {
        double margin = INFINITY;
        int done = 0;
        while (done < 10000) {
          const Mat2 F = random_f(r, 0.01, 10.0);
          const double d = F.determinant();
          if (!(d > 0.0) || d > 10.0)
            continue;
          const double g = l.gamma(F);
          margin = std::min({margin, g - c, C - g});
          ++done;
        }
        return Outcome{margin, margin >= 0.0};
      },
      mutate([&](Laws& x) {
        x.gamma = [g = L.gamma, c = m.c_gamma, C = m.C_gamma](const Mat2& F) {
          const Mat2 E = F.transpose() * F - Mat2::Identity();
          return g(F) + 2.0 * (C - c) * (1.0 - std::exp(-E.squaredNorm()));
        };
      }),
      "gamma + 2 (C - c)(1 - exp(-|E|^2))");
  paired(
      rep, seed, "gamma(I) = gamma0", CheckKind::kAnalytic, 0.0, L,
      [g0 = m.gamma0](const Laws& l, Rng&) {
        const double e = std::abs(l.gamma(Mat2::Identity()) - g0);
        return Outcome{e, e == 0.0};
      },
      mutate([&](Laws& x) {
        x.gamma = [g = L.gamma](const Mat2& F) { return g(F) - 1e-3; };
      }),
      "gamma - 1e-3");
  if (m.kappa > 0.0) {
    paired(
        rep, seed, "gamma is within 1e-9 of c_gamma at |F^T F - I|^2 = 50 / kappa",
        CheckKind::kAnalytic, 1e-9, L,
        [c = m.c_gamma, k = m.kappa](const Laws& l, Rng&) {
          // F = s I gives |F^T F - I|^2 = 2 (s^2 - 1)^2.
          const double s = std::sqrt(1.0 + std::sqrt(25.0 / k));
          return at_most(std::abs(l.gamma(s * Mat2::Identity()) - c), 1e-9);
        },
        mutate([&](Laws& x) {
          x.gamma = [g = L.gamma](const Mat2& F) { return g(F) + 1e-6; };
        }),
        "gamma + 1e-6");
  } else {
    paired(
        rep, seed, "kappa = 0 gives a constant speed", CheckKind::kAnalytic,
        0.0, L,
        [g0 = m.gamma0](const Laws& l, Rng& r) {
          double worst = 0.0;
          for (int k = 0; k < 100; ++k)
            worst = std::max(worst, std::abs(l.gamma(random_f(r, 0.1, 5.0)) - g0));
          return Outcome{worst, worst == 0.0};
        },
        mutate([&](Laws& x) {
          x.gamma = [g = L.gamma](const Mat2& F) {
            return g(F) - 1e-3 * (F - Mat2::Identity()).norm();
          };
        }),
        "gamma - 1e-3 |F - I|");
  }
  const double lip = growth_lipschitz_bound(m);
  paired(
      rep, seed, "gamma is Lipschitz with the reported bound",
      CheckKind::kProperty, lip, L,
      [lip](const Laws& l, Rng& r) {
        double worst = 0.0;
        for (int k = 0; k < 5000; ++k) {
          const Mat2 F = random_f(r, 0.3, 2.0);
          const Mat2 G = F + random_matrix(r, k % 2 ? 0.05 : 1e-5);
          if (!(G.determinant() > 0.0))
            continue;
          worst = std::max(worst,
                           std::abs(l.gamma(F) - l.gamma(G)) / (F - G).norm());
        }
        return Outcome{worst, worst <= lip * (1 + 1e-9)};
      },
      mutate([&](Laws& x) {
        x.gamma = [g = L.gamma](const Mat2& F) {
          return g(F) + 0.01 * std::sin(1e3 * F(0, 0));
        };
      }),
      "gamma + 0.01 sin(1000 F11)");

  // --- material switch -----------------------------------------------------
  paired(
      rep, seed, "h(-0.1) = 1, h(0) = 1, h(1e-15) = delta",
      CheckKind::kAnalytic, 0.0, L,
      [d = m.delta](const Laws& l, Rng&) {
        const double e = std::abs(l.h(-0.1) - 1.0) + std::abs(l.h(0.0) - 1.0) +
                         std::abs(l.h(1e-15) - d);
        return Outcome{e, e == 0.0};
      },
      mutate([&](Laws& x) {
        x.h = [d = m.delta](double s) { return s < 0.0 ? 1.0 : d; };
      }),
      "switch with strict inequality");

  return rep;
}

// ===========================================================================
// Eikonal suite

namespace {

DomainSpec eikonal_domain(int size) {
  DomainSpec d;
  d.omega0.shapes = {Disk{{0.5, 0.5}, 0.1}};
  d.anchor.shapes = {Disk{{0.5, 0.5}, size < 65 ? 0.03 : 0.05}};
  d.final_time = 0.25;
  d.c_gamma = 0.5;
  d.C_gamma = 1.0;
  return d;
}

SpeedField random_speed(const Grid& g, Rng& r, double c, double C) {
  const double a1 = uniform(r, 1, 7), a2 = uniform(r, 1, 7);
  const double p1 = uniform(r, 0, 6), p2 = uniform(r, 0, 6);
  SpeedField s;
  s.c_gamma = c;
  s.C_gamma = C;
  s.values.resize(g.size());
  for (int k = 0; k < g.size(); ++k) {
    const Vec2 x = g.point(k);
    s.values[k] = c + (C - c) * (0.5 + 0.5 * std::sin(a1 * x.x() + p1) *
                                           std::cos(a2 * x.y() + p2));
  }
  return s;
}

double relative_sup(const ThetaField& a, const ThetaField& b) {
  return sup_distance(a, b) / std::max(b.max(), 1e-300);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

VerificationReport verify_eikonal(const EikonalSuiteOptions& opt) {
  VerificationReport rep;
  rep.suite = "eikonal";
  rep.seed = opt.seed;
  const double c = 0.5, C = 1.0;
  const std::string sz = "x";

  std::vector<double> errors, oracle_worst;
  double oracle_ratio_max = 0.0, oracle_seconds = 0.0;
  for (int size : opt.sizes) {
    const std::string tag = " at " + std::to_string(size) + sz +
                            std::to_string(size);
    const Grid g = build_grid(eikonal_domain(size), size);
    const double h = g.h();

    // Analytic constant speed.
    const auto t0 = std::chrono::steady_clock::now();
    const ThetaField th = solve_fmm(SpeedField::constant(g, C), g);
    const double secs = seconds_since(t0);
    double err = 0.0;
    for (int n = 0; n < g.size(); ++n) {
      const double exact =
          std::max(0.0, (g.point(n) - Vec2(0.5, 0.5)).norm() - 0.1) / C;
      err = std::max(err, std::abs(th[n] - exact));
    }
    errors.push_back(err);
    rep.add({"constant speed matches the distance to the disk" + tag,
             err <= 2 * h, err, 2 * h, CheckKind::kAnalytic, ""});
    rep.add({"constant speed solve time (s)" + tag, secs < 5.0, secs, 5.0,
             CheckKind::kMonitor, ""});

    double causal = 0.0;
    for (size_t k = 1; k < th.accepted_order.size(); ++k)
      causal = std::max(causal, th[th.accepted_order[k - 1]] -
                                    th[th.accepted_order[k]]);
    rep.add({"acceptance order is nondecreasing in theta" + tag,
             causal <= 0.0, causal, 0.0, CheckKind::kProperty, ""});

    const BoundReport br = check_bounds(th, g, C, C);
    rep.add({"bounds hold for constant speed" + tag, br.ok(),
             double(br.distance_violations + br.gradient_violations), 0.0,
             CheckKind::kProperty, br.summary()});

    // Oracle at constant speed and on random fields.
    const ThetaField dj = dijkstra_oracle(SpeedField::constant(g, C), g);
    double ratio = sup_distance(th, dj) / h;
    Rng r(opt.seed);
    double worst = 0.0;
    int bound_fail = 0;
    const auto t1 = std::chrono::steady_clock::now();
    for (int f = 0; f < opt.random_fields; ++f) {
      const SpeedField s = random_speed(g, r, c, C);
      const ThetaField a = solve_fmm(s, g);
      const ThetaField b = dijkstra_oracle(s, g);
      worst = std::max(worst, relative_sup(a, b));
      ratio = std::max(ratio, sup_distance(a, b) / h);
      const BoundReport rb = check_bounds(a, g, c, C);
      bound_fail += rb.distance_violations + rb.gradient_violations;
    }
    oracle_seconds += seconds_since(t1);
    oracle_worst.push_back(worst);
    oracle_ratio_max = std::max(oracle_ratio_max, ratio);
    rep.add({"fast marching within 5% of the path oracle on " +
                 std::to_string(opt.random_fields) + " random speeds" + tag,
             worst <= 0.05, worst, 0.05, CheckKind::kOracle, ""});
    rep.add({"bounds hold on random speeds" + tag, bound_fail == 0,
             double(bound_fail), 0.0, CheckKind::kProperty, ""});
  }
  for (size_t k = 1; k < errors.size(); ++k) {
    const double ratio = errors[k - 1] / errors[k];
    const std::string tag = " from " + std::to_string(opt.sizes[k - 1]) +
                            " to " + std::to_string(opt.sizes[k]);
    // Below 65 nodes the disk is only a few cells across and the ratio is
    // pre-asymptotic, so the coarse pair is a monitor with wider slack.
    if (opt.sizes[k - 1] >= 65)
      rep.add({"error ratio under refinement" + tag,
               ratio >= 1.6 && ratio <= 2.4, ratio, 0.4, CheckKind::kOracle,
               "first order: ratio in [1.6, 2.4]"});
    else
      rep.add({"error ratio under refinement" + tag,
               ratio >= 1.4 && ratio <= 2.6, ratio, 0.6, CheckKind::kMonitor,
               "coarse pair: ratio in [1.4, 2.6]"});
    rep.add({"oracle distance decreases under refinement" + tag,
             oracle_worst[k] < oracle_worst[k - 1], oracle_worst[k],
             oracle_worst[k - 1], CheckKind::kOracle, ""});
  }
  rep.add({"random-speed oracle comparison time (s)", oracle_seconds < 60.0,
           oracle_seconds, 60.0, CheckKind::kMonitor, ""});
  if (!opt.sizes.empty())
    rep.add({"oracle distance stays below 2 h on every grid",
             oracle_ratio_max <= 2.0, oracle_ratio_max, 2.0,
             CheckKind::kOracle, "sup |fmm - oracle| / h"});

  // Fixed-size samples on 65 x 65.
  const Grid g = build_grid(eikonal_domain(65), 65);
  const double h = g.h();
  {
    const ThetaField slow = solve_fmm(SpeedField::constant(g, 0.5), g);
    const ThetaField fast = solve_fmm(SpeedField::constant(g, 1.0), g);
    double e = 0.0;
    for (int n = 0; n < g.size(); ++n)
      e = std::max(e, std::abs(slow[n] - 2.0 * fast[n]));
    e /= slow.max();
    rep.add({"halving the speed doubles theta", e <= 1e-12, e, 1e-12,
             CheckKind::kAnalytic, ""});
  }
  {
    SpeedField s = SpeedField::constant(g, C);
    s.c_gamma = c;
    for (int n = 0; n < g.size(); ++n)
      s.values[n] = g.point(n).x() < 0.5 ? 0.5 : 1.0;
    const double d = sup_distance(solve_fmm(s, g), dijkstra_oracle(s, g));
    rep.add({"two-valued speed matches the path oracle within 3h / c_gamma",
             d <= 3 * h / c, d, 3 * h / c, CheckKind::kOracle, ""});
  }
  {
    DomainSpec d = eikonal_domain(65);
    d.omega0.shapes = {Disk{{0.5, 0.5}, 0.25 * h}};
    const Grid pg(d, 65, 65, h);
    const ThetaField t = dijkstra_oracle(SpeedField::constant(pg, 1.0), pg);
    double lo = INFINITY, hi = 0.0;
    for (int n = 0; n < pg.size(); ++n) {
      const double e = (pg.point(n) - Vec2(0.5, 0.5)).norm();
      if (e < 0.5 * h)
        continue;
      lo = std::min(lo, t[n] / e);
      hi = std::max(hi, t[n] / e);
    }
    rep.add({"path oracle metric lies between 1 and 1.03 times Euclidean",
             lo >= 1.0 - 1e-12 && hi <= 1.03, hi, 1.03, CheckKind::kOracle,
             "min ratio " + format_double(lo)});
  }
  {
    ThetaField t = solve_fmm(SpeedField::constant(g, C), g);
    const int victim = g.index(52, 32);
    t.values[victim] *= 0.5;
    const BoundReport br = check_bounds(t, g, C, C);
    const bool flagged = std::find(br.flagged_nodes.begin(),
                                   br.flagged_nodes.end(),
                                   victim) != br.flagged_nodes.end();
    rep.add({"bound check flags a node whose theta was halved", flagged,
             double(br.flagged_nodes.size()), 0.0, CheckKind::kControl, ""});
  }
  {
    Rng r(opt.seed + 1);
    double worst_mono = 0.0, worst_stab = -INFINITY;
    const double eps = 0.05;
    for (int f = 0; f < 5; ++f) {
      const SpeedField s = random_speed(g, r, c, C);
      SpeedField faster = s, perturbed = s;
      const SpeedField bump = random_speed(g, r, 0.0, 1.0);
      for (int n = 0; n < g.size(); ++n) {
        faster.values[n] = std::min(C, s.values[n] + 0.3 * bump.values[n]);
        perturbed.values[n] = std::clamp(
            s.values[n] + eps * (2.0 * bump.values[n] - 1.0), c, C);
      }
      const ThetaField a = solve_fmm(s, g);
      const ThetaField b = solve_fmm(faster, g);
      const ThetaField p = solve_fmm(perturbed, g);
      for (int n = 0; n < g.size(); ++n)
        worst_mono = std::max(worst_mono, b[n] - a[n]);
      const double bound = eps * a.max() / c + h / c;
      worst_stab = std::max(worst_stab, sup_distance(a, p) - bound);
    }
    rep.add({"a pointwise faster speed gives a pointwise earlier theta",
             worst_mono <= 1e-14, worst_mono, 1e-14, CheckKind::kProperty, ""});
    rep.add({"speed perturbation eps moves theta by at most eps theta_max / "
             "c_gamma + h / c_gamma",
             worst_stab <= 0.0, worst_stab, 0.0, CheckKind::kProperty,
             "measured is the largest excess over the bound"});
  }
  return rep;
}

// ===========================================================================
// Equilibrium suite

namespace {

VectorField perturbed_identity(const Discretization& disc, Rng& r,
                               double amplitude) {
  const Grid& g = disc.grid();
  VectorField y = identity_field(g);
  for (int n : disc.free_nodes())
    y[n] += amplitude * g.h() * Vec2(uniform(r, -1, 1), uniform(r, -1, 1));
  return y;
}

}  // namespace

VerificationReport verify_equilibrium(const RunConfig& config) {
  VerificationReport rep;
  rep.suite = "equilibrium";
  rep.seed = config.seed;
  const CoupledProblem base = make_problem(config);
  const Grid& g = base.grid;
  const Discretization disc(g);
  const MaterialParams& m = config.material;
  const int N = config.n_steps;
  const double T = g.spec().final_time;
  const double tau = T / N;
  const double area = g.spec().lx * g.spec().ly;
  const ThetaField theta = solve_fmm(
      initial_speed(DeformationState::from(identity_field(g), disc.ops()),
                    default_growth_law(m), m),
      g);
  const std::vector<Mat2> eye(g.size(), Mat2::Identity());
  const DeformationState id = DeformationState::from(identity_field(g),
                                                     disc.ops());

  auto problem = [&](int step, const BackstrainField& bs,
                     const DeformationState& prev, Vec2 f,
                     const MaterialParams& mp) {
    IncrementalProblem p;
    p.disc = &disc;
    p.step = step;
    p.time = step * tau;
    p.tau = tau;
    p.theta = &theta;
    p.backstrain = &bs;
    p.previous = &prev;
    p.force = f;
    p.params = mp;
    return p;
  };

  // Identity stationarity.
  {
    const BackstrainField bs = init_backstrain(eye, g, theta, tau, N);
    const IncrementalProblem p = problem(1, bs, id, Vec2::Zero(), m);
    const EnergyEvaluation ev = incremental_energy(id.y, p);
    const double e = rel(ev.value(), area * m.c_J);
    rep.add({"identity energy equals |U| c_J", e <= 1e-12, e, 1e-12,
             CheckKind::kAnalytic, ""});
    const double res = el_residual(id.y, p);
    rep.add({"identity is stationary", res <= 1e-10, res, 1e-10,
             CheckKind::kAnalytic, ""});
  }

  // Gradient assembly against central differences.
  {
    Rng r(config.seed);
    double worst = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int s = 0; s < 3; ++s) {
      const int step = std::max(1, N / 2);
      BackstrainField bs = init_backstrain(
          std::vector<Mat2>(g.size(), config.a0), g, theta, tau, N);
      for (int i = 1; i < step; ++i)
        record_arrivals(bs, i,
                        DeformationState::from(perturbed_identity(disc, r, 0.05),
                                               disc.ops())
                            .grad);
      const DeformationState prev =
          DeformationState::from(perturbed_identity(disc, r, 0.05), disc.ops());
      const VectorField y = perturbed_identity(disc, r, 0.1);
      const IncrementalProblem p =
          problem(step, bs, prev, Vec2(0.3, -0.7), m);
      const EnergyEvaluation ev = incremental_energy(y, p);
      const auto& free = disc.free_nodes();
      for (int k = 0; k < 20; ++k) {
        const int n = free[r() % free.size()];
        const int c = static_cast<int>(r() % 2);
        const double e = 1e-6 * g.h();
        VectorField yp = y, ym = y;
        yp[n][c] += e;
        ym[n][c] -= e;
        const double fd = (incremental_energy(yp, p).value() -
                           incremental_energy(ym, p).value()) /
                          (2 * e);
        const double an = ev.gradient[n][c];
        worst = std::max(worst,
                         std::abs(fd - an) / std::max(std::abs(an), 1e-12));
      }
    }
    rep.add({"energy gradient matches central differences (3 states, 20 "
             "coordinates each)",
             worst <= 1e-5, worst, 1e-5, CheckKind::kOracle, ""});
    const double secs = seconds_since(t0);
    rep.add({"gradient check time (s)", secs < 30.0, secs, 30.0,
             CheckKind::kMonitor, ""});
  }

  // Linearity in c_J.
  {
    Rng r(config.seed + 7);
    const BackstrainField bs = init_backstrain(eye, g, theta, tau, N);
    const DeformationState prev =
        DeformationState::from(perturbed_identity(disc, r, 0.05), disc.ops());
    const VectorField y = perturbed_identity(disc, r, 0.1);
    MaterialParams m2 = m;
    m2.c_J *= 2.0;
    const EnergyParts a =
        incremental_energy(y, problem(3, bs, prev, Vec2(0, -0.5), m)).parts;
    const EnergyParts b =
        incremental_energy(y, problem(3, bs, prev, Vec2(0, -0.5), m2)).parts;
    const double shift =
        std::abs((b.total - a.total) - a.barrier) / std::abs(a.total);
    const double e = std::max({rel(b.barrier, 2.0 * a.barrier), shift,
                               rel(a.second_grade, b.second_grade),
                               rel(a.dissipation, b.dissipation),
                               rel(a.load, b.load)});
    rep.add({"doubling c_J doubles the barrier term and nothing else",
             e <= 1e-12, e, 1e-12, CheckKind::kAnalytic, ""});
  }

  // Dissipation increments.
  {
    Rng r(config.seed + 11);
    const DeformationState prev =
        DeformationState::from(perturbed_identity(disc, r, 0.05), disc.ops());
    const double same = dissipation_increment(disc, prev, prev, theta, tau,
                                              tau, m);
    rep.add({"dissipation increment of a repeated state is zero", same == 0.0,
             same, 0.0, CheckKind::kAnalytic, ""});
    Mat2 S;
    S << 0.0, -0.3, 0.3, 0.0;
    VectorField y = prev.y;
    for (auto& v : y)
      v += tau * S * v;
    const DeformationState rot = DeformationState::from(y, disc.ops());
    const double rigid = dissipation_increment(disc, rot, prev, theta, tau,
                                               tau, m);
    // Reference scale: the same rate without its skew structure.
    for (size_t n = 0; n < y.size(); ++n)
      y[n] = prev.y[n] + tau * S.cwiseAbs() * prev.y[n];
    const double generic = dissipation_increment(
        disc, DeformationState::from(y, disc.ops()), prev, theta, tau, tau, m);
    const double ratio = rigid / generic;
    rep.add({"rigid rotation rate dissipates nothing", ratio <= 1e-12, ratio,
             1e-12, CheckKind::kAnalytic, "relative to a non-rigid rate"});
  }

  // Identity trajectory with f = 0.
  {
    RunConfig c = config;
    c.force = ForceLaw{};
    c.y0 = InitialBump{};
    c.a0 = Mat2::Identity();
    CoupledProblem p = make_problem(c);
    const auto t0 = std::chrono::steady_clock::now();
    const CoupledResult res = run_coupled(p);
    const double secs = seconds_since(t0);
    double dev = 0.0;
    for (const auto& s : res.state.trajectory.states())
      for (int n = 0; n < g.size(); ++n)
        dev = std::max(dev, (s.y[n] - g.point(n)).lpNorm<Eigen::Infinity>());
    rep.add({"unloaded run stays at the identity", dev <= 1e-8, dev, 1e-8,
             CheckKind::kAnalytic, ""});
    rep.add({"unloaded run converges after one outer iteration",
             res.report.converged && res.report.iterations == 1,
             double(res.report.iterations), 1.0, CheckKind::kAnalytic,
             res.report.message});
    rep.add({"unloaded run time (s)", secs < 120.0, secs, 120.0,
             CheckKind::kMonitor, ""});
  }

  const Vec2 f_full = config.force.value.isZero(0.0) ? Vec2(0.0, -0.5)
                                                     : config.force.value;

  // One loaded step: residual control, work sign, re-solve.
  {
    const BackstrainField bs = init_backstrain(eye, g, theta, tau, N);
    const IncrementalProblem p = problem(1, bs, id, f_full, m);
    const double before = el_residual(id.y, p);
    rep.add({"loaded identity is not stationary", before > config.solver.tol_el,
             before, config.solver.tol_el, CheckKind::kControl, ""});
    SolverOptions so = config.solver;
    so.allow_nonconverged = true;
    const StepResult first = minimize_step(p, so);
    rep.add({"loaded step meets the residual tolerance",
             first.row.residual <= so.tol_el, first.row.residual, so.tol_el,
             CheckKind::kProperty, ""});
    rep.add({"loaded step has negative work", first.row.work < 0.0,
             first.row.work, 0.0, CheckKind::kProperty, ""});
    Rng r(config.seed + 3);
    VectorField start = first.state.y;
    for (int n : disc.free_nodes())
      start[n] += 1e-3 * g.h() * Vec2(uniform(r, -1, 1), uniform(r, -1, 1));
    const StepResult again = minimize_step(p, so, &start);
    const double d = std::abs(again.row.energy - first.row.energy);
    rep.add({"re-solving from a perturbed start reproduces the energy",
             d <= 1e-8, d, 1e-8, CheckKind::kOracle, ""});
  }

  // Loaded trajectory monitors.
  {
    CoupledProblem p = make_problem(config);
    p.force.value = f_full;
    const Discretization d2(p.grid);
    BackstrainField bs;
    EnergyLedger ledger;
    IterateMetrics mt;
    const DeformationHistory traj =
        solve_trajectory(p, d2, theta, 1, bs, ledger, mt);
    rep.add({"energy does not increase in any step", mt.minimality_violations == 0,
             double(mt.minimality_violations), 0.0, CheckKind::kProperty, ""});
    rep.add({"min det grad y over the loaded trajectory", mt.min_det >= 0.5,
             mt.min_det, 0.5, CheckKind::kMonitor, ""});
    double dmin = INFINITY, pmax = 0.0, qmax = 0.0;
    for (const LedgerRow& row : ledger.rows) {
      dmin = std::min(dmin, row.dissipation);
      pmax = std::max(pmax, row.hessian_p_sum);
      qmax = std::max(qmax, row.det_q_sum);
    }
    rep.add({"dissipation increments are nonnegative", dmin >= 0.0, dmin, 0.0,
             CheckKind::kProperty, ""});
    const double cum = ledger.cumulative_dissipation();
    rep.add({"cumulative dissipation is finite", std::isfinite(cum), cum, 0.0,
             CheckKind::kMonitor, ""});
    rep.add({"second-gradient and barrier sums stay finite",
             std::isfinite(pmax) && std::isfinite(qmax), qmax, 0.0,
             CheckKind::kMonitor,
             "sum |grad^2 y|^p up to " + format_double(pmax)});
    rep.add({"every step meets the residual tolerance",
             mt.nonconverged_steps == 0 &&
                 mt.max_residual <= config.solver.tol_el,
             mt.max_residual, config.solver.tol_el, CheckKind::kProperty, ""});
    rep.add({"frozen nodes attach unstressed", mt.attachment_stress <= 1e-12,
             mt.attachment_stress, 1e-12, CheckKind::kProperty, ""});
    int moved = 0;
    for (const auto& s : traj.states())
      for (int n = 0; n < p.grid.size(); ++n)
        if (p.grid.is_fixed(n) && s.y[n] != p.grid.point(n))
          ++moved;
    rep.add({"anchor and boundary nodes stay at the identity", moved == 0,
             double(moved), 0.0, CheckKind::kProperty, ""});
  }
  return rep;
}

VerificationReport verify_all(const RunConfig& config,
                              const EikonalSuiteOptions& eikonal) {
  VerificationReport rep = verify_hypotheses(config.material, config.seed);
  rep.suite = "all";
  rep.merge(verify_eikonal(eikonal));
  rep.merge(verify_equilibrium(config));
  return rep;
}

}  // namespace accrete
