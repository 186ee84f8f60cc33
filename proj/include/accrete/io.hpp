// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "accrete/config.hpp"
#include "accrete/coupling.hpp"

namespace accrete {

/// Numeric CSV table with a header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Column index; throws IoError naming the column if absent.
  int column(const std::string& name) const;
};

Table read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const Table& table);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

/// Legacy ASCII VTK structured points with any number of scalar and
/// two-component vector point fields.
struct VtkField {
  std::string name;
  std::vector<double> values;  ///< one per node, or two per node for vectors
  bool vector = false;
};
void write_vtk(const std::filesystem::path& path, int nx, int ny, double h,
               const std::vector<VtkField>& fields);

struct Polyline {
  std::vector<Vec2> points;
  bool closed = false;
};

/// Marching squares on the nodal field `values` (flat index j*nx + i,
/// spacing h): the contours of {values = level}. Saddle cells are split by
/// the cell-centre average. Closed contours repeat no point; `closed` marks
/// them.
std::vector<Polyline> level_contours(const std::vector<double>& values,
                                     int nx, int ny, double h, double level);

/// Files written by write_run into the run directory.
const std::vector<std::string>& run_files();

/// Writes every artifact of a run: resolved config, summary (text and JSON),
/// theta, backstrain, the energy ledger, the per-iterate convergence table,
/// and the selected trajectory snapshots.
void write_run(const std::filesystem::path& dir, const RunConfig& config,
               const CoupledProblem& problem, const CoupledResult& result);

/// Theta field read back from a run directory.
struct StoredTheta {
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  std::vector<double> values;
};
StoredTheta read_theta(const std::filesystem::path& dir);

/// Converts a run directory. format is "vtk", "csv" or "fronts"; fronts are
/// traced at `times` (defaults 0.25T, 0.5T, T). Returns the files written.
/// Throws IoError listing the expected files if the directory is incomplete.
std::vector<std::filesystem::path> export_run(const std::filesystem::path& dir,
                                              const std::string& format,
                                              std::vector<double> times = {});

}  // namespace accrete
