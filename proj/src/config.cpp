// SPDX-License-Identifier: Apache-2.0

#include "accrete/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "accrete/errors.hpp"

namespace accrete {

Vec2 InitialBump::operator()(const Vec2& x) const {
  if (is_identity())
    return x;
  const double s2 = (x - center).squaredNorm() / (radius * radius);
  if (s2 >= 1.0)
    return x;
  const double w = 1.0 - s2;
  return x + amplitude * (w * w * w);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size() || !std::isfinite(v))
    throw ConfigError("bad number for " + key + ": '" + text + "'");
  return v;
}

long long to_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size())
    throw ConfigError("bad integer for " + key + ": '" + text + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes")
    return true;
  if (t == "false" || t == "0" || t == "no")
    return false;
  throw ConfigError("bad boolean for " + key + ": '" + text + "'");
}

std::vector<double> numbers(const std::string& what, const std::string& body) {
  std::vector<double> out;
  std::string cur;
  for (char c : body + ",") {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!trim(cur).empty())
        out.push_back(to_double(what, cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

/// Splits "name(args) name(args)" into (name, args) pairs.
std::vector<std::pair<std::string, std::string>> calls(const std::string& key,
                                                       const std::string& s) {
  std::vector<std::pair<std::string, std::string>> out;
  size_t pos = 0;
  while (true) {
    while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == '+'))
      ++pos;
    if (pos >= s.size())
      break;
    const size_t open = s.find('(', pos);
    const size_t close = s.find(')', pos);
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw ConfigError("cannot parse " + key + ": '" + s + "'");
    out.emplace_back(trim(s.substr(pos, open - pos)),
                     s.substr(open + 1, close - open - 1));
    pos = close + 1;
  }
  return out;
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define REAL(sec, name, expr)                                               \
  Field {                                                                   \
    sec, name,                                                              \
        [](RunConfig& c, const std::string& v) {                            \
          expr = to_double(std::string(sec) + "." + name, v);               \
        },                                                                  \
        [](const RunConfig& c) { return fmt(expr); }                        \
  }

#define INT(sec, name, expr)                                                \
  Field {                                                                   \
    sec, name,                                                              \
        [](RunConfig& c, const std::string& v) {                            \
          expr = static_cast<std::decay_t<decltype(expr)>>(                  \
              to_int(std::string(sec) + "." + name, v));                    \
        },                                                                  \
        [](const RunConfig& c) { return std::to_string(expr); }             \
  }

std::string matrix_text(const Mat2& a) {
  return fmt(a(0, 0)) + ", " + fmt(a(0, 1)) + ", " + fmt(a(1, 0)) + ", " +
         fmt(a(1, 1));
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      REAL("domain", "lx", c.domain.lx),
      REAL("domain", "ly", c.domain.ly),
      {"domain", "omega0",
       [](RunConfig& c, const std::string& v) {
         c.domain.omega0 = parse_region(v);
       },
       [](const RunConfig& c) { return c.domain.omega0.describe(); }},
      {"domain", "anchor",
       [](RunConfig& c, const std::string& v) {
         c.domain.anchor = parse_region(v);
       },
       [](const RunConfig& c) { return c.domain.anchor.describe(); }},
      REAL("domain", "final_time", c.domain.final_time),
      REAL("material", "p", c.material.p),
      REAL("material", "q", c.material.q),
      REAL("material", "c_W", c.material.c_W),
      REAL("material", "c_J", c.material.c_J),
      REAL("material", "c_H", c.material.c_H),
      REAL("material", "eps_H", c.material.eps_H),
      REAL("material", "c_R", c.material.c_R),
      REAL("material", "delta", c.material.delta),
      REAL("material", "c_gamma", c.material.c_gamma),
      REAL("material", "C_gamma", c.material.C_gamma),
      REAL("material", "gamma0", c.material.gamma0),
      REAL("material", "kappa", c.material.kappa),
      INT("discretization", "resolution", c.resolution),
      INT("discretization", "n_steps", c.n_steps),
      REAL("force", "fx", c.force.value.x()),
      REAL("force", "fy", c.force.value.y()),
      REAL("force", "ramp_time", c.force.ramp_time),
      {"initial", "y0",
       [](RunConfig& c, const std::string& v) {
         if (trim(v) == "identity") {
           c.y0 = InitialBump{};
           return;
         }
         const auto cs = calls("initial.y0", v);
         if (cs.size() != 1 || cs[0].first != "bump")
           throw ConfigError("initial.y0 must be 'identity' or "
                             "'bump(ax, ay, cx, cy, r)'");
         const auto a = numbers("initial.y0", cs[0].second);
         if (a.size() != 5)
           throw ConfigError("initial.y0 bump takes 5 numbers");
         c.y0 = InitialBump{{a[0], a[1]}, {a[2], a[3]}, a[4]};
       },
       [](const RunConfig& c) -> std::string {
         if (c.y0.is_identity())
           return "identity";
         return "bump(" + fmt(c.y0.amplitude.x()) + ", " +
                fmt(c.y0.amplitude.y()) + ", " + fmt(c.y0.center.x()) + ", " +
                fmt(c.y0.center.y()) + ", " + fmt(c.y0.radius) + ")";
       }},
      {"initial", "a0",
       [](RunConfig& c, const std::string& v) {
         if (trim(v) == "identity") {
           c.a0 = Mat2::Identity();
           return;
         }
         const auto cs = calls("initial.a0", v);
         if (cs.size() != 1 || cs[0].first != "matrix")
           throw ConfigError("initial.a0 must be 'identity' or "
                             "'matrix(a11, a12, a21, a22)'");
         const auto a = numbers("initial.a0", cs[0].second);
         if (a.size() != 4)
           throw ConfigError("initial.a0 matrix takes 4 numbers");
         c.a0 << a[0], a[1], a[2], a[3];
       },
       [](const RunConfig& c) -> std::string {
         if (c.a0 == Mat2::Identity())
           return "identity";
         return "matrix(" + matrix_text(c.a0) + ")";
       }},
      REAL("solver", "tol_el", c.solver.tol_el),
      INT("solver", "max_iterations", c.solver.max_iterations),
      INT("solver", "memory", c.solver.memory),
      REAL("solver", "det_guard", c.solver.det_guard),
      INT("solver", "threads", c.solver.threads),
      REAL("solver", "tol_theta", c.coupling.tol_theta),
      REAL("solver", "tol_y", c.coupling.tol_y),
      INT("solver", "k_max", c.coupling.k_max),
      {"solver", "on_step_failure",
       [](RunConfig& c, const std::string& v) {
         const std::string t = trim(v);
         if (t == "abort")
           c.coupling.on_step_failure = StepFailurePolicy::kAbort;
         else if (t == "continue")
           c.coupling.on_step_failure = StepFailurePolicy::kContinue;
         else
           throw ConfigError("solver.on_step_failure must be abort or "
                             "continue");
       },
       [](const RunConfig& c) -> std::string {
         return c.coupling.on_step_failure == StepFailurePolicy::kAbort
                    ? "abort"
                    : "continue";
       }},
      {"output", "directory",
       [](RunConfig& c, const std::string& v) {
         c.output.directory = trim(v);
       },
       [](const RunConfig& c) { return c.output.directory; }},
      {"output", "trajectory_steps",
       [](RunConfig& c, const std::string& v) {
         const std::string t = trim(v);
         c.output.steps.clear();
         c.output.all_steps = false;
         if (t == "all") {
           c.output.all_steps = true;
         } else if (t != "final") {
           for (double s : numbers("output.trajectory_steps", t)) {
             if (s != std::floor(s) || s < 0)
               throw ConfigError("output.trajectory_steps: bad step index");
             c.output.steps.push_back(static_cast<int>(s));
           }
         }
       },
       [](const RunConfig& c) -> std::string {
         if (c.output.all_steps)
           return "all";
         if (c.output.steps.empty())
           return "final";
         std::string s;
         for (size_t k = 0; k < c.output.steps.size(); ++k)
           s += (k ? ", " : "") + std::to_string(c.output.steps[k]);
         return s;
       }},
      {"output", "vtk",
       [](RunConfig& c, const std::string& v) {
         c.output.vtk = to_bool("output.vtk", v);
       },
       [](const RunConfig& c) -> std::string {
         return c.output.vtk ? "true" : "false";
       }},
      INT("run", "seed", c.seed),
  };
  return table;
}

#undef REAL
#undef INT

const Field& find_field(const std::string& section, const std::string& key) {
  for (const Field& f : fields())
    if (f.section == section && f.key == key)
      return f;
  throw ConfigError("unknown key [" + section + "] " + key);
}

}  // namespace

Region parse_region(const std::string& text) {
  Region r;
  for (const auto& [name, body] : calls("region", text)) {
    const auto v = numbers("region", body);
    if (name == "disk") {
      if (v.size() != 3 || !(v[2] > 0.0))
        throw ConfigError("disk(cx, cy, r) needs three numbers with r > 0");
      r.shapes.push_back(Disk{{v[0], v[1]}, v[2]});
    } else if (name == "polygon") {
      if (v.size() < 6 || v.size() % 2)
        throw ConfigError("polygon needs at least three vertices");
      Polygon p;
      for (size_t k = 0; k < v.size(); k += 2)
        p.vertices.emplace_back(v[k], v[k + 1]);
      r.shapes.push_back(std::move(p));
    } else {
      throw ConfigError("unknown shape '" + name + "'");
    }
  }
  return r;
}

RunConfig reference_config() {
  RunConfig c;
  c.domain.omega0.shapes = {Disk{{0.5, 0.5}, 0.1}};
  c.domain.anchor.shapes = {Disk{{0.5, 0.5}, 0.05}};
  c.domain.final_time = 0.25;
  c.material.c_gamma = 0.5;
  c.material.C_gamma = 1.0;
  c.material.gamma0 = 1.0;
  c.material.kappa = 5.0;
  c.force.value = Vec2(0.0, -0.5);
  c.force.ramp_time = 0.25;
  c.solver.tol_el = 1e-7;
  return c;
}

void validate_config(const RunConfig& c) {
  if (c.resolution < 17)
    throw ConfigError("discretization.resolution must be at least 17");
  if (c.n_steps < 1)
    throw ConfigError("discretization.n_steps must be at least 1");
  validate(c.material);
  DomainSpec d = c.domain;
  d.c_gamma = c.material.c_gamma;
  d.C_gamma = c.material.C_gamma;
  validate_domain(d, d.lx / (c.resolution - 1));
  if (!(c.a0.determinant() > 0.0))
    throw ConfigError("hypothesis (H13) violated: det A0 must be positive");
  if (!(c.solver.tol_el > 0.0) || !(c.solver.det_guard > 0.0) ||
      c.solver.max_iterations < 1 || c.solver.memory < 1 ||
      c.solver.threads < 1)
    throw ConfigError("solver tolerances, caps and thread count must be "
                      "positive");
  if (c.coupling.k_max < 1)
    throw ConfigError("solver.k_max must be at least 1");
  if (c.coupling.tol_theta < 0.0 || c.coupling.tol_y < 0.0)
    throw ConfigError("coupling tolerances must be nonnegative");
  if (!c.y0.is_identity()) {
    const InitialBump& b = c.y0;
    const double lx = c.domain.lx, ly = c.domain.ly;
    const double wall = std::min({b.center.x(), lx - b.center.x(),
                                  b.center.y(), ly - b.center.y()});
    if (wall <= b.radius || c.domain.anchor.distance(b.center) <= b.radius)
      throw ConfigError("initial.y0 bump must stay clear of the anchor and "
                        "the container boundary");
    // sup |phi'| = 6/sqrt(5) (4/5)^2 at s = 1/sqrt(5).
    const double slope = 6.0 / std::sqrt(5.0) * 0.64 / b.radius;
    if (b.amplitude.norm() * slope >= 1.0)
      throw ConfigError("initial.y0 bump is too steep to preserve "
                        "orientation");
  }
  if (c.output.directory.empty())
    throw ConfigError("output.directory must not be empty");
  for (int s : c.output.steps)
    if (s > c.n_steps)
      throw ConfigError("output.trajectory_steps lists a step beyond n_steps");
}

RunConfig parse_config(const std::string& text, bool validate) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.message() +
                      " at line " + std::to_string(e.line()));
  }
  RunConfig c = reference_config();
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("key '" + section + "' outside of a section");
    for (const auto& [key, value] : body)
      find_field(section, key).set(c, value.data());
  }
  if (validate)
    validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path, bool validate) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), validate);
}

void set_config_value(RunConfig& config, const std::string& dotted,
                      const std::string& value, bool validate) {
  const auto dot = dotted.find('.');
  if (dot == std::string::npos)
    throw ConfigError("config keys are written section.key, got '" + dotted +
                      "'");
  RunConfig next = config;
  find_field(dotted.substr(0, dot), dotted.substr(dot + 1)).set(next, value);
  if (validate)
    validate_config(next);
  config = std::move(next);
}

std::vector<ConfigEntry> config_entries(const RunConfig& c) {
  std::vector<ConfigEntry> out;
  for (const Field& f : fields())
    out.push_back({f.section, f.key, f.get(c)});
  return out;
}

std::string to_ini(const RunConfig& c) {
  std::ostringstream os;
  std::string section;
  for (const ConfigEntry& e : config_entries(c)) {
    if (e.section != section) {
      if (!section.empty())
        os << '\n';
      section = e.section;
      os << '[' << section << "]\n";
    }
    os << e.key << " = " << e.value << '\n';
  }
  return os.str();
}

CoupledProblem make_problem(const RunConfig& c) {
  validate_config(c);
  DomainSpec d = c.domain;
  d.c_gamma = c.material.c_gamma;
  d.C_gamma = c.material.C_gamma;
  CoupledProblem p(build_grid(d, c.resolution));
  p.params = c.material;
  p.n_steps = c.n_steps;
  p.force = c.force;
  p.y0.resize(p.grid.size());
  for (int n = 0; n < p.grid.size(); ++n)
    p.y0[n] = p.grid.is_fixed(n) ? p.grid.point(n) : c.y0(p.grid.point(n));
  p.a0.assign(p.grid.size(), c.a0);
  p.solver = c.solver;
  p.coupling = c.coupling;
  return p;
}

}  // namespace accrete
