// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace accrete {

/// Invalid model or run configuration. The message names the violated
/// hypothesis where one applies, e.g. "hypothesis (H15) violated: ...".
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A deformation with non-positive Jacobian determinant was evaluated.
class InadmissibleState : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver stopped at its cap without meeting its tolerance.
class NonconvergenceError : public std::runtime_error {
public:
  NonconvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

/// Broken internal consistency (e.g. a solver produced data that violates
/// an invariant other modules rely on).
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace accrete
