// SPDX-License-Identifier: Apache-2.0
//
// accrete run | verify | export

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "accrete/accrete.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNonconverged = 3;
constexpr int kExitVerify = 4;

int exit_code(accrete_status s) {
  switch (s) {
    case ACCRETE_OK: return kExitOk;
    case ACCRETE_CONFIG_ERROR: return kExitConfig;
    case ACCRETE_NONCONVERGED: return kExitNonconverged;
    case ACCRETE_VERIFY_FAILED: return kExitVerify;
    default: return kExitFailure;
  }
}

int report_error(accrete_status s) {
  std::cerr << "accrete: " << accrete_last_error() << '\n';
  return exit_code(s);
}

struct ConfigHandle {
  accrete_config* ptr = nullptr;
  ~ConfigHandle() { accrete_config_free(ptr); }
};

/// Loads `path` (the reference config when empty), then applies
/// environment and command-line overrides in that order.
accrete_status load(const std::string& path, bool validate,
                    const std::vector<std::string>& sets, bool single_thread,
                    const std::string& output, ConfigHandle& cfg) {
  accrete_status s = path.empty()
                         ? accrete_config_reference(&cfg.ptr)
                         : accrete_config_load(path.c_str(), validate, &cfg.ptr);
  if (s != ACCRETE_OK)
    return s;
  auto set = [&](const std::string& key, const std::string& value) {
    return accrete_config_set(cfg.ptr, key.c_str(), value.c_str());
  };
  if (const char* dir = std::getenv("ACCRETE_OUTPUT_DIR"); dir && *dir)
    if ((s = set("output.directory", dir)) != ACCRETE_OK)
      return s;
  if (const char* t = std::getenv("ACCRETE_THREADS"); t && *t)
    if ((s = set("solver.threads", t)) != ACCRETE_OK)
      return s;
  for (const std::string& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "accrete: --set expects section.key=value, got '" << kv
                << "'\n";
      return ACCRETE_CONFIG_ERROR;
    }
    if ((s = set(kv.substr(0, eq), kv.substr(eq + 1))) != ACCRETE_OK)
      return s;
  }
  if (!output.empty() && (s = set("output.directory", output)) != ACCRETE_OK)
    return s;
  if (single_thread && (s = set("solver.threads", "1")) != ACCRETE_OK)
    return s;
  return ACCRETE_OK;
}

std::string fmt(double v) {
  if (v < 0.0)
    return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void print_iterate(const accrete_iterate_metrics* m, void* user) {
  if (*static_cast<bool*>(user))
    return;
  std::printf("%3d  %10s %10s %10s %10s  %8.5f %9.2e %4d %9.2e %4d %7.4f %6.1f%s\n",
              m->k, fmt(m->theta_change).c_str(), fmt(m->y_change).c_str(),
              fmt(m->speed_change).c_str(), fmt(m->speed_bound).c_str(),
              m->min_det, m->max_residual, m->minimality_violations,
              m->attachment_stress, m->bound_violations, m->front_clearance,
              m->seconds,
              m->failed_step ? ("  step " + std::to_string(m->failed_step) +
                                " failed")
                                   .c_str()
                             : "");
  std::fflush(stdout);
}

int cmd_run(const std::string& path, const std::vector<std::string>& sets,
            bool single_thread, const std::string& output, bool quiet) {
  ConfigHandle cfg;
  accrete_status s = load(path, true, sets, single_thread, output, cfg);
  if (s != ACCRETE_OK)
    return report_error(s);
  char* value = nullptr;
  if ((s = accrete_config_get(cfg.ptr, "output.directory", &value)) !=
      ACCRETE_OK)
    return report_error(s);
  const std::string dir = value;
  accrete_string_free(value);
  if (!quiet)
    std::printf("  k  %10s %10s %10s %10s  %8s %9s %4s %9s %4s %7s %6s\n",
                "d_theta", "d_y", "d_speed", "speed_bnd", "min_det",
                "residual", "mono", "attach", "bnd", "clear", "sec");
  accrete_run* run = nullptr;
  const accrete_status rs = accrete_run_coupled(cfg.ptr, print_iterate, &quiet,
                                                &run);
  if (!run)
    return report_error(rs);
  const std::string message = accrete_run_message(run);
  const accrete_status ws = accrete_run_write(run, dir.c_str());
  accrete_run_free(run);
  if (ws != ACCRETE_OK)
    return report_error(ws);
  std::printf("%s\nartifacts in %s\n", message.c_str(), dir.c_str());
  return rs == ACCRETE_OK ? kExitOk : kExitNonconverged;
}

int cmd_verify(const std::string& suite, const std::string& path,
               const std::vector<int>& sizes, const std::string& seed,
               const std::string& json, bool single_thread) {
  ConfigHandle cfg;
  std::vector<std::string> sets;
  if (!seed.empty())
    sets.push_back("run.seed=" + seed);
  accrete_status s = load(path, false, sets, single_thread, "", cfg);
  if (s != ACCRETE_OK)
    return report_error(s);
  accrete_report* rep = nullptr;
  s = accrete_verify(cfg.ptr, suite.c_str(), sizes.data(), sizes.size(), &rep);
  if (!rep)
    return report_error(s);
  std::cout << accrete_report_text(rep);
  if (json == "-") {
    std::cout << accrete_report_json(rep) << '\n';
  } else if (!json.empty()) {
    std::ofstream out(json);
    out << accrete_report_json(rep) << '\n';
    if (!out) {
      std::cerr << "accrete: cannot write " << json << '\n';
      accrete_report_free(rep);
      return kExitFailure;
    }
  }
  const bool passed = accrete_report_passed(rep);
  accrete_report_free(rep);
  return passed ? kExitOk : kExitVerify;
}

int cmd_export(const std::string& dir, const std::string& format,
               const std::vector<double>& times) {
  char* written = nullptr;
  const accrete_status s = accrete_export(dir.c_str(), format.c_str(),
                                          times.data(), times.size(), &written);
  if (s != ACCRETE_OK)
    return report_error(s);
  std::cout << written;
  accrete_string_free(written);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accretive growth: coupled arrival-time and equilibrium solver"};
  app.set_version_flag("--version", std::string(accrete_version()));
  app.require_subcommand(1);

  std::string config_path, output, seed, json, dir, format, suite;
  std::vector<std::string> sets;
  std::vector<int> sizes;
  std::vector<double> times;
  bool single_thread = false, quiet = false;

  auto* run = app.add_subcommand("run", "run the coupled problem");
  run->add_option("config", config_path, "INI config file")->required()
      ->check(CLI::ExistingFile);
  run->add_option("-o,--output", output,
                  "output directory (overrides ACCRETE_OUTPUT_DIR)");
  run->add_option("--set", sets, "override section.key=value");
  run->add_flag("--single-thread", single_thread,
                "one assembly thread (overrides ACCRETE_THREADS)");
  run->add_flag("-q,--quiet", quiet, "no per-iterate rows");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "hypotheses, eikonal, equilibrium or all")
      ->required()
      ->check(CLI::IsMember({"hypotheses", "eikonal", "equilibrium", "all"}));
  verify->add_option("-c,--config", config_path,
                     "config whose parameters are checked (default: reference)")
      ->check(CLI::ExistingFile);
  verify->add_option("--sizes", sizes, "eikonal grid sizes")->delimiter(',');
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--json", json, "write the JSON report here ('-' for stdout)");
  verify->add_flag("--single-thread", single_thread, "one assembly thread");

  auto* exp = app.add_subcommand("export", "convert a run directory");
  exp->add_option("dir", dir, "run directory")->required();
  exp->add_option("format", format, "vtk, csv or fronts")->required();
  exp->add_option("--times", times, "front times (default 0.25T,0.5T,T)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (*run)
    return cmd_run(config_path, sets, single_thread, output, quiet);
  if (*verify)
    return cmd_verify(suite, config_path, sizes, seed, json, single_thread);
  return cmd_export(dir, format, times);
}
