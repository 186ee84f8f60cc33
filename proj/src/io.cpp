// SPDX-License-Identifier: Apache-2.0

#include "accrete/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "accrete/errors.hpp"
#include "accrete/version.hpp"

namespace fs = std::filesystem;

namespace accrete {

std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

double parse_double(const std::string& s, const fs::path& path, int line) {
  if (s == "nan")
    return std::nan("");
  if (s == "inf")
    return INFINITY;
  if (s == "-inf")
    return -INFINITY;
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw IoError(path.string() + ":" + std::to_string(line) +
                  ": not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

int Table::column(const std::string& name) const {
  for (size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == name)
      return static_cast<int>(k);
  throw IoError("missing column '" + name + "'");
}

Table read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot read " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line))
    throw IoError(path.string() + " is empty");
  t.columns = split(line);
  int n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty())
      continue;
    const auto cells = split(line);
    if (cells.size() != t.columns.size())
      throw IoError(path.string() + ":" + std::to_string(n) +
                    ": wrong number of columns");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells)
      row.push_back(parse_double(c, path, n));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(const fs::path& path, const Table& t) {
  auto out = open_out(path);
  for (size_t k = 0; k < t.columns.size(); ++k)
    out << (k ? "," : "") << t.columns[k];
  out << '\n';
  for (const auto& row : t.rows) {
    for (size_t k = 0; k < row.size(); ++k)
      out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
  if (!out)
    throw IoError("failed writing " + path.string());
}

void write_vtk(const fs::path& path, int nx, int ny, double h,
               const std::vector<VtkField>& fields) {
  auto out = open_out(path);
  const size_t n = static_cast<size_t>(nx) * ny;
  out << "# vtk DataFile Version 3.0\naccrete field\nASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << nx << ' ' << ny << " 1\n"
      << "ORIGIN 0 0 0\n"
      << "SPACING " << format_double(h) << ' ' << format_double(h) << " 1\n"
      << "POINT_DATA " << n << '\n';
  for (const VtkField& f : fields) {
    if (f.values.size() != (f.vector ? 2 * n : n))
      throw InternalError("write_vtk: field '" + f.name + "' has wrong size");
    if (f.vector) {
      out << "VECTORS " << f.name << " double\n";
      for (size_t k = 0; k < n; ++k)
        out << format_double(f.values[2 * k]) << ' '
            << format_double(f.values[2 * k + 1]) << " 0\n";
    } else {
      out << "SCALARS " << f.name << " double 1\nLOOKUP_TABLE default\n";
      for (size_t k = 0; k < n; ++k)
        out << format_double(f.values[k]) << '\n';
    }
  }
  if (!out)
    throw IoError("failed writing " + path.string());
}

// ---------------------------------------------------------------------------

std::vector<Polyline> level_contours(const std::vector<double>& v, int nx,
                                     int ny, double h, double level) {
  auto node = [&](int i, int j) { return j * nx + i; };
  // Edge ids: 2*node for the edge to the right, 2*node+1 for the edge up.
  std::map<long long, Vec2> point;
  std::map<long long, std::vector<long long>> adj;
  auto crossing = [&](int i0, int j0, int i1, int j1, long long id) {
    if (!point.count(id)) {
      const double a = v[node(i0, j0)], b = v[node(i1, j1)];
      const double t = (level - a) / (b - a);
      point[id] = Vec2((i0 + t * (i1 - i0)) * h, (j0 + t * (j1 - j0)) * h);
    }
    return id;
  };
  auto link = [&](long long a, long long b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };

  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const double va = v[node(i, j)], vb = v[node(i + 1, j)];
      const double vc = v[node(i + 1, j + 1)], vd = v[node(i, j + 1)];
      const bool a = va < level, b = vb < level, c = vc < level,
                 d = vd < level;
      // Edges in cyclic order: bottom, right, top, left.
      long long e[4];
      bool cut[4] = {a != b, b != c, c != d, d != a};
      if (cut[0]) e[0] = crossing(i, j, i + 1, j, 2LL * node(i, j));
      if (cut[1]) e[1] = crossing(i + 1, j, i + 1, j + 1, 2LL * node(i + 1, j) + 1);
      if (cut[2]) e[2] = crossing(i, j + 1, i + 1, j + 1, 2LL * node(i, j + 1));
      if (cut[3]) e[3] = crossing(i, j, i, j + 1, 2LL * node(i, j) + 1);
      const int ncut = cut[0] + cut[1] + cut[2] + cut[3];
      if (ncut == 2) {
        int first = -1;
        for (int k = 0; k < 4; ++k) {
          if (!cut[k])
            continue;
          if (first < 0)
            first = k;
          else
            link(e[first], e[k]);
        }
      } else if (ncut == 4) {
        const bool centre = 0.25 * (va + vb + vc + vd) < level;
        if (centre == a) {
          link(e[0], e[1]);
          link(e[2], e[3]);
        } else {
          link(e[3], e[0]);
          link(e[1], e[2]);
        }
      }
    }
  }

  std::vector<Polyline> out;
  std::map<long long, bool> seen;
  auto trace = [&](long long start) {
    Polyline pl;
    long long prev = -1, cur = start;
    while (true) {
      seen[cur] = true;
      pl.points.push_back(point[cur]);
      long long next = -1;
      for (long long nb : adj[cur])
        if (nb != prev && !seen[nb]) {
          next = nb;
          break;
        }
      if (next < 0) {
        for (long long nb : adj[cur])
          if (nb == start && nb != prev && pl.points.size() > 2)
            pl.closed = true;
        break;
      }
      prev = cur;
      cur = next;
    }
    out.push_back(std::move(pl));
  };
  for (const auto& [id, nbs] : adj)
    if (nbs.size() == 1 && !seen[id])
      trace(id);
  for (const auto& [id, nbs] : adj)
    if (!seen[id])
      trace(id);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kConfig = "config.ini";
constexpr const char* kSummaryText = "summary.txt";
constexpr const char* kSummaryJson = "summary.json";
constexpr const char* kTheta = "theta.csv";
constexpr const char* kBackstrain = "backstrain.csv";
constexpr const char* kLedger = "ledger.csv";
constexpr const char* kConvergence = "convergence.csv";
constexpr const char* kFinal = "y_final.csv";

Table deformation_table(const Grid& grid, const DeformationState& s) {
  Table t;
  t.columns = {"i", "j", "x", "y", "y1", "y2", "det_grad_y"};
  for (int n = 0; n < grid.size(); ++n) {
    const Vec2 x = grid.point(n);
    t.rows.push_back({double(grid.col(n)), double(grid.row(n)), x.x(), x.y(),
                      s.y[n].x(), s.y[n].y(), s.grad[n].determinant()});
  }
  return t;
}

std::string step_file(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "y_step_%04d.csv", i);
  return buf;
}

void require(const fs::path& dir, const std::vector<std::string>& names) {
  std::vector<std::string> missing;
  for (const auto& n : names)
    if (!fs::exists(dir / n))
      missing.push_back(n);
  if (missing.empty())
    return;
  std::string msg = "run directory " + dir.string() + " is missing";
  for (const auto& m : missing)
    msg += " " + m;
  msg += " (expected:";
  for (const auto& n : names)
    msg += " " + n;
  msg += ")";
  throw IoError(msg);
}

}  // namespace

const std::vector<std::string>& run_files() {
  static const std::vector<std::string> files = {
      kConfig, kSummaryText, kSummaryJson, kTheta,
      kBackstrain, kLedger, kConvergence, kFinal};
  return files;
}

void write_run(const fs::path& dir, const RunConfig& config,
               const CoupledProblem& problem, const CoupledResult& result) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const Grid& grid = problem.grid;
  const CoupledState& st = result.state;
  const ConvergenceReport& rep = result.report;

  {
    auto out = open_out(dir / kConfig);
    out << to_ini(config);
  }

  Table theta;
  theta.columns = {"i", "j", "x", "y", "flags", "theta", "theta0", "speed"};
  for (int n = 0; n < grid.size(); ++n) {
    const Vec2 x = grid.point(n);
    theta.rows.push_back({double(grid.col(n)), double(grid.row(n)), x.x(),
                          x.y(), double(grid.flags(n)), st.theta[n],
                          st.theta_initial[n], st.speed.values[n]});
  }
  write_csv(dir / kTheta, theta);

  Table bs;
  bs.columns = {"i", "j", "a11", "a12", "a21", "a22", "detA", "slab"};
  for (int n = 0; n < grid.size(); ++n) {
    const Mat2& a = st.backstrain.at(n);
    const int slab = st.backstrain.slab(n);
    bs.rows.push_back({double(grid.col(n)), double(grid.row(n)), a(0, 0),
                       a(0, 1), a(1, 0), a(1, 1), a.determinant(),
                       slab == BackstrainField::kNever ? -1.0 : double(slab)});
  }
  write_csv(dir / kBackstrain, bs);

  Table ledger;
  ledger.columns = {"outer", "step", "time", "energy", "energy_start",
                    "stored", "dissipation", "work", "min_det", "residual",
                    "iterations", "cumulative_dissipation", "hessian_p_sum",
                    "det_q_sum", "converged"};
  for (const LedgerRow& r : st.ledger.rows)
    ledger.rows.push_back({double(r.outer), double(r.step), r.time, r.energy,
                           r.energy_start, r.stored, r.dissipation, r.work,
                           r.min_det, r.residual, double(r.iterations),
                           r.cumulative_dissipation, r.hessian_p_sum,
                           r.det_q_sum, r.converged ? 1.0 : 0.0});
  write_csv(dir / kLedger, ledger);

  Table conv;
  conv.columns = {"k", "theta_change", "y_change", "speed_change",
                  "speed_bound", "min_det", "max_residual",
                  "cumulative_dissipation", "minimality_violations",
                  "attachment_stress", "nonconverged_steps",
                  "bound_violations", "front_clearance", "failed_step"};
  for (const IterateMetrics& m : rep.history)
    conv.rows.push_back({double(m.k), m.theta_change, m.y_change,
                         m.speed_change, m.speed_bound, m.min_det,
                         m.max_residual, m.cumulative_dissipation,
                         double(m.minimality_violations), m.attachment_stress,
                         double(m.nonconverged_steps),
                         double(m.bound_violations), m.front_clearance,
                         double(m.failed_step)});
  write_csv(dir / kConvergence, conv);

  const DeformationHistory& traj = st.trajectory;
  write_csv(dir / kFinal, deformation_table(grid, traj[traj.steps()]));
  std::vector<int> steps = config.output.steps;
  if (config.output.all_steps)
    for (int i = 0; i <= traj.steps(); ++i)
      steps.push_back(i);
  for (int i : steps)
    if (i >= 0 && i <= traj.steps())
      write_csv(dir / step_file(i), deformation_table(grid, traj[i]));

  if (config.output.vtk)
    export_run(dir, "vtk");

  // Summary: every resolved key, then the outcome.
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["seed"] = config.seed;
  for (const ConfigEntry& e : config_entries(config))
    j["config"][e.section][e.key] = e.value;
  j["grid"] = {{"nx", grid.nx()}, {"ny", grid.ny()}, {"h", grid.h()}};
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["step_failure"] = rep.step_failure;
  j["message"] = rep.message;
  j["tol_theta"] = rep.tol_theta;
  j["tol_y"] = rep.tol_y;
  double min_det = INFINITY;
  for (const IterateMetrics& m : rep.history)
    min_det = std::min(min_det, m.min_det);
  j["theta_max"] = st.theta.max();
  j["min_det"] = min_det;
  j["cumulative_dissipation"] = st.ledger.cumulative_dissipation();
  {
    auto out = open_out(dir / kSummaryJson);
    out << j.dump(2) << '\n';
  }
  {
    auto out = open_out(dir / kSummaryText);
    out << "accrete " << kVersion << "\nseed = " << config.seed << "\n\n"
        << to_ini(config) << "\n[result]\n"
        << "nx = " << grid.nx() << "\nny = " << grid.ny()
        << "\nh = " << format_double(grid.h())
        << "\nconverged = " << (rep.converged ? "true" : "false")
        << "\niterations = " << rep.iterations
        << "\nstep_failure = " << (rep.step_failure ? "true" : "false")
        << "\nmessage = " << rep.message
        << "\ntol_theta = " << format_double(rep.tol_theta)
        << "\ntol_y = " << format_double(rep.tol_y)
        << "\ntheta_max = " << format_double(st.theta.max())
        << "\nmin_det = " << format_double(min_det)
        << "\ncumulative_dissipation = "
        << format_double(st.ledger.cumulative_dissipation()) << '\n';
  }
}

StoredTheta read_theta(const fs::path& dir) {
  require(dir, {kTheta});
  const Table t = read_csv(dir / kTheta);
  const int ci = t.column("i"), cj = t.column("j"), cx = t.column("x"),
            ct = t.column("theta");
  StoredTheta s;
  for (const auto& r : t.rows) {
    s.nx = std::max(s.nx, int(r[ci]) + 1);
    s.ny = std::max(s.ny, int(r[cj]) + 1);
  }
  if (s.nx < 2 || s.ny < 2 ||
      static_cast<int>(t.rows.size()) != s.nx * s.ny)
    throw IoError("theta.csv does not describe a full grid");
  s.values.assign(t.rows.size(), 0.0);
  for (const auto& r : t.rows) {
    const int n = int(r[cj]) * s.nx + int(r[ci]);
    s.values[n] = r[ct];
    if (int(r[ci]) == 1 && int(r[cj]) == 0)
      s.h = r[cx];
  }
  return s;
}

std::vector<fs::path> export_run(const fs::path& dir, const std::string& format,
                                 std::vector<double> times) {
  if (!fs::is_directory(dir))
    throw IoError("not a run directory: " + dir.string());
  std::vector<fs::path> written;
  if (format == "vtk") {
    require(dir, {kTheta, kFinal, kBackstrain});
    const StoredTheta th = read_theta(dir);
    const Table theta = read_csv(dir / kTheta);
    const Table fin = read_csv(dir / kFinal);
    const Table bs = read_csv(dir / kBackstrain);
    auto col = [](const Table& t, const std::string& name) {
      const int c = t.column(name);
      std::vector<double> v;
      for (const auto& r : t.rows)
        v.push_back(r[c]);
      return v;
    };
    write_vtk(dir / "theta.vtk", th.nx, th.ny, th.h,
              {{"theta", col(theta, "theta")},
               {"theta0", col(theta, "theta0")},
               {"speed", col(theta, "speed")}});
    written.push_back(dir / "theta.vtk");
    std::vector<double> disp;
    const int cx = fin.column("x"), cy = fin.column("y"),
              c1 = fin.column("y1"), c2 = fin.column("y2");
    for (const auto& r : fin.rows) {
      disp.push_back(r[c1] - r[cx]);
      disp.push_back(r[c2] - r[cy]);
    }
    write_vtk(dir / "y_final.vtk", th.nx, th.ny, th.h,
              {{"displacement", disp, true},
               {"det_grad_y", col(fin, "det_grad_y")}});
    written.push_back(dir / "y_final.vtk");
    write_vtk(dir / "backstrain.vtk", th.nx, th.ny, th.h,
              {{"detA", col(bs, "detA")}, {"slab", col(bs, "slab")}});
    written.push_back(dir / "backstrain.vtk");
  } else if (format == "csv") {
    require(dir, {kTheta, kFinal, kBackstrain});
    const Table theta = read_csv(dir / kTheta);
    const Table fin = read_csv(dir / kFinal);
    const Table bs = read_csv(dir / kBackstrain);
    if (theta.rows.size() != fin.rows.size() ||
        theta.rows.size() != bs.rows.size())
      throw IoError("field files in " + dir.string() + " disagree in size");
    Table out;
    out.columns = {"i", "j", "x", "y", "theta", "y1", "y2", "det_grad_y",
                   "a11", "a12", "a21", "a22", "detA"};
    for (size_t k = 0; k < theta.rows.size(); ++k) {
      std::vector<double> r;
      for (const char* c : {"i", "j", "x", "y", "theta"})
        r.push_back(theta.rows[k][theta.column(c)]);
      for (const char* c : {"y1", "y2", "det_grad_y"})
        r.push_back(fin.rows[k][fin.column(c)]);
      for (const char* c : {"a11", "a12", "a21", "a22", "detA"})
        r.push_back(bs.rows[k][bs.column(c)]);
      out.rows.push_back(std::move(r));
    }
    write_csv(dir / "fields.csv", out);
    written.push_back(dir / "fields.csv");
  } else if (format == "fronts") {
    require(dir, {kTheta, kConfig});
    const StoredTheta th = read_theta(dir);
    if (times.empty()) {
      const double T = load_config((dir / kConfig).string()).domain.final_time;
      times = {0.25 * T, 0.5 * T, T};
    }
    Table out;
    out.columns = {"time", "contour", "point", "x", "y", "closed"};
    for (double t : times) {
      const auto lines = level_contours(th.values, th.nx, th.ny, th.h, t);
      for (size_t c = 0; c < lines.size(); ++c)
        for (size_t p = 0; p < lines[c].points.size(); ++p)
          out.rows.push_back({t, double(c), double(p),
                              lines[c].points[p].x(), lines[c].points[p].y(),
                              lines[c].closed ? 1.0 : 0.0});
    }
    write_csv(dir / "fronts.csv", out);
    written.push_back(dir / "fronts.csv");
  } else {
    throw ConfigError("unknown export format '" + format +
                      "' (expected vtk, csv or fronts)");
  }
  return written;
}

}  // namespace accrete
