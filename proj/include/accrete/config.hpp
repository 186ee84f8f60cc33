// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "accrete/coupling.hpp"
#include "accrete/geometry.hpp"

namespace accrete {

/// Initial deformation y0(x) = x + a * phi(|x - c| / r) with
/// phi(s) = (1 - s^2)^3 on s < 1 and 0 beyond. a = 0 is the identity.
struct InitialBump {
  Vec2 amplitude = Vec2::Zero();
  Vec2 center = Vec2(0.5, 0.5);
  double radius = 0.0;

  bool is_identity() const { return amplitude.isZero(0.0) || radius <= 0.0; }
  Vec2 operator()(const Vec2& x) const;
};

struct OutputPolicy {
  std::string directory = "accrete-run";
  /// Steps whose y is written; empty with all_steps false means final only.
  std::vector<int> steps;
  bool all_steps = false;
  bool vtk = true;
};

/// Everything a run needs, loaded from an INI file with sections
/// [domain] [material] [discretization] [force] [initial] [solver] [output]
/// [run]. Missing keys take their reference_config() values; unknown keys
/// are an error.
struct RunConfig {
  DomainSpec domain;
  MaterialParams material;
  int resolution = 65;
  int n_steps = 16;
  ForceLaw force;
  InitialBump y0;
  Mat2 a0 = Mat2::Identity();
  SolverOptions solver;
  CouplingOptions coupling;
  OutputPolicy output;
  std::uint64_t seed = 20240611;
};

/// The bundled reference configuration.
RunConfig reference_config();

Region parse_region(const std::string& text);

/// Parses and validates. Throws ConfigError naming the offending key or the
/// violated hypothesis. validate = false skips the gates (the verify command
/// reports them as failing checks instead).
RunConfig parse_config(const std::string& text, bool validate = true);
RunConfig load_config(const std::string& path, bool validate = true);

/// Assigns one "section.key" entry from its text form and, by default,
/// revalidates.
void set_config_value(RunConfig& config, const std::string& key,
                      const std::string& value, bool validate = true);

/// Re-runs every load-time gate.
void validate_config(const RunConfig& config);

struct ConfigEntry {
  std::string section;
  std::string key;
  std::string value;
};

/// Every resolved key in file order.
std::vector<ConfigEntry> config_entries(const RunConfig& config);

/// Fully resolved INI text; parse_config(to_ini(c)) reproduces c.
std::string to_ini(const RunConfig& config);

/// Grid, initial data and options ready for run_coupled.
CoupledProblem make_problem(const RunConfig& config);

}  // namespace accrete
