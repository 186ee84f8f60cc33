// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "accrete/config.hpp"
#include "accrete/constitutive.hpp"

namespace accrete {

enum class CheckKind {
  kAnalytic,  ///< closed-form value
  kOracle,    ///< independent computation
  kProperty,  ///< sampled invariant
  kMonitor,   ///< runtime estimate or regression figure
  kControl,   ///< negative control: passes when the guarded check fails
};

const char* to_string(CheckKind kind);

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::kProperty;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool passed() const;
  int failures() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void merge(const VerificationReport& other);
  std::string json() const;
  std::string text() const;
};

/// Constitutive property suite on `params`, which need not be valid: an
/// invalid parameter set yields failing checks, not an exception. Every
/// sampled property is paired with a control run on a deliberately broken
/// law that must fail it.
VerificationReport verify_hypotheses(const MaterialParams& params,
                                     std::uint64_t seed);

struct EikonalSuiteOptions {
  std::vector<int> sizes = {33, 65, 129};
  int random_fields = 20;
  std::uint64_t seed = 20240611;
};

/// Analytic constant-speed errors and their refinement ratios, oracle
/// cross-checks, bound checks, speed monotonicity and stability samples.
VerificationReport verify_eikonal(const EikonalSuiteOptions& options);

/// Identity stationarity, gradient assembly against finite differences,
/// modulus linearity, and a forced trajectory with its minimality,
/// admissibility, dissipation and attachment monitors, all on the grid and
/// material of `config`.
VerificationReport verify_equilibrium(const RunConfig& config);

/// The three suites above on `config`.
VerificationReport verify_all(const RunConfig& config,
                              const EikonalSuiteOptions& eikonal);

}  // namespace accrete
