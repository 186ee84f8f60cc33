// SPDX-License-Identifier: Apache-2.0

#include "accrete/accrete.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "accrete/config.hpp"
#include "accrete/coupling.hpp"
#include "accrete/errors.hpp"
#include "accrete/harness.hpp"
#include "accrete/io.hpp"
#include "accrete/version.hpp"

struct accrete_config {
  accrete::RunConfig value;
  bool validated = true;
};

struct accrete_run {
  accrete::RunConfig config;
  accrete::CoupledProblem problem;
  accrete::CoupledResult result;
};

struct accrete_report {
  accrete::VerificationReport value;
  std::string json;
  std::string text;
};

namespace {

thread_local std::string last_error;

accrete_status fail(accrete_status s, const std::string& message) {
  last_error = message;
  return s;
}

/// Maps the library exceptions onto status codes.
template <class F>
accrete_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const accrete::ConfigError& e) {
    return fail(ACCRETE_CONFIG_ERROR, e.what());
  } catch (const accrete::NonconvergenceError& e) {
    return fail(ACCRETE_NONCONVERGED, e.what());
  } catch (const accrete::InadmissibleState& e) {
    return fail(ACCRETE_NONCONVERGED, e.what());
  } catch (const accrete::IoError& e) {
    return fail(ACCRETE_IO_ERROR, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(ACCRETE_IO_ERROR, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ACCRETE_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ACCRETE_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(ACCRETE_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(ACCRETE_INTERNAL_ERROR, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

accrete_status missing(const char* what) {
  return fail(ACCRETE_INVALID_ARGUMENT, std::string(what) + " is NULL");
}

}  // namespace

extern "C" {

const char* accrete_version(void) { return accrete::kVersion; }

const char* accrete_last_error(void) { return last_error.c_str(); }

void accrete_string_free(char* s) { std::free(s); }

accrete_status accrete_config_reference(accrete_config** out) {
  if (!out)
    return missing("out");
  return guarded([&] {
    *out = new accrete_config{accrete::reference_config()};
    return ACCRETE_OK;
  });
}

accrete_status accrete_config_parse(const char* text, int validate,
                                    accrete_config** out) {
  if (!text)
    return missing("text");
  if (!out)
    return missing("out");
  return guarded([&] {
    *out = new accrete_config{accrete::parse_config(text, validate != 0),
                              validate != 0};
    return ACCRETE_OK;
  });
}

accrete_status accrete_config_load(const char* path, int validate,
                                   accrete_config** out) {
  if (!path)
    return missing("path");
  if (!out)
    return missing("out");
  return guarded([&] {
    *out = new accrete_config{accrete::load_config(path, validate != 0),
                              validate != 0};
    return ACCRETE_OK;
  });
}

accrete_status accrete_config_set(accrete_config* config, const char* key,
                                  const char* value) {
  if (!config)
    return missing("config");
  if (!key)
    return missing("key");
  if (!value)
    return missing("value");
  return guarded([&] {
    accrete::set_config_value(config->value, key, value, config->validated);
    return ACCRETE_OK;
  });
}

accrete_status accrete_config_get(const accrete_config* config,
                                  const char* key, char** out) {
  if (!config)
    return missing("config");
  if (!key)
    return missing("key");
  if (!out)
    return missing("out");
  return guarded([&] {
    const std::string k = key;
    for (const auto& e : accrete::config_entries(config->value))
      if (e.section + "." + e.key == k) {
        *out = copy_string(e.value);
        return ACCRETE_OK;
      }
    return fail(ACCRETE_CONFIG_ERROR, "unknown key '" + k + "'");
  });
}

accrete_status accrete_config_validate(const accrete_config* config) {
  if (!config)
    return missing("config");
  return guarded([&] {
    accrete::validate_config(config->value);
    return ACCRETE_OK;
  });
}

accrete_status accrete_config_to_ini(const accrete_config* config, char** out) {
  if (!config)
    return missing("config");
  if (!out)
    return missing("out");
  return guarded([&] {
    *out = copy_string(accrete::to_ini(config->value));
    return ACCRETE_OK;
  });
}

void accrete_config_free(accrete_config* config) { delete config; }

accrete_status accrete_run_coupled(const accrete_config* config,
                                   accrete_iterate_callback callback,
                                   void* user, accrete_run** out) {
  if (!config)
    return missing("config");
  if (!out)
    return missing("out");
  *out = nullptr;
  return guarded([&] {
    auto run = std::make_unique<accrete_run>(accrete_run{
        config->value, accrete::make_problem(config->value), {}});
    accrete::IterateObserver observer;
    if (callback)
      observer = [&](const accrete::IterateMetrics& m) {
        const accrete_iterate_metrics c{m.k,
                                        m.theta_change,
                                        m.y_change,
                                        m.speed_change,
                                        m.speed_bound,
                                        m.min_det,
                                        m.max_residual,
                                        m.cumulative_dissipation,
                                        m.minimality_violations,
                                        m.attachment_stress,
                                        m.nonconverged_steps,
                                        m.bound_violations,
                                        m.front_clearance,
                                        m.seconds,
                                        m.failed_step};
        callback(&c, user);
      };
    run->result = accrete::run_coupled(run->problem, observer);
    const bool ok = run->result.report.converged;
    const std::string message = run->result.report.message;
    *out = run.release();
    return ok ? ACCRETE_OK : fail(ACCRETE_NONCONVERGED, message);
  });
}

accrete_status accrete_run_write(const accrete_run* run, const char* dir) {
  if (!run)
    return missing("run");
  if (!dir)
    return missing("dir");
  return guarded([&] {
    accrete::write_run(dir, run->config, run->problem, run->result);
    return ACCRETE_OK;
  });
}

int accrete_run_converged(const accrete_run* run) {
  return run && run->result.report.converged ? 1 : 0;
}

int accrete_run_iterations(const accrete_run* run) {
  return run ? run->result.report.iterations : 0;
}

const char* accrete_run_message(const accrete_run* run) {
  return run ? run->result.report.message.c_str() : "";
}

accrete_status accrete_run_grid(const accrete_run* run, int* nx, int* ny,
                                double* h) {
  if (!run)
    return missing("run");
  const accrete::Grid& g = run->problem.grid;
  if (nx)
    *nx = g.nx();
  if (ny)
    *ny = g.ny();
  if (h)
    *h = g.h();
  return ACCRETE_OK;
}

accrete_status accrete_run_theta(const accrete_run* run, double* out,
                                 size_t n) {
  if (!run)
    return missing("run");
  if (!out)
    return missing("out");
  const auto& v = run->result.state.theta.values;
  if (n != v.size())
    return fail(ACCRETE_INVALID_ARGUMENT,
                "theta has " + std::to_string(v.size()) + " values, buffer " +
                    std::to_string(n));
  std::copy(v.begin(), v.end(), out);
  return ACCRETE_OK;
}

accrete_status accrete_run_final_y(const accrete_run* run, double* out,
                                   size_t n) {
  if (!run)
    return missing("run");
  if (!out)
    return missing("out");
  const auto& traj = run->result.state.trajectory;
  const auto& y = traj[traj.steps()].y;
  if (n != 2 * y.size())
    return fail(ACCRETE_INVALID_ARGUMENT,
                "final y has " + std::to_string(2 * y.size()) +
                    " values, buffer " + std::to_string(n));
  for (size_t k = 0; k < y.size(); ++k) {
    out[2 * k] = y[k].x();
    out[2 * k + 1] = y[k].y();
  }
  return ACCRETE_OK;
}

void accrete_run_free(accrete_run* run) { delete run; }

accrete_status accrete_verify(const accrete_config* config, const char* suite,
                              const int* sizes, size_t n_sizes,
                              accrete_report** out) {
  if (!config)
    return missing("config");
  if (!suite)
    return missing("suite");
  if (!out)
    return missing("out");
  if (n_sizes > 0 && !sizes)
    return missing("sizes");
  *out = nullptr;
  return guarded([&] {
    const std::string s = suite;
    const accrete::RunConfig& c = config->value;
    accrete::EikonalSuiteOptions eo;
    eo.seed = c.seed;
    if (n_sizes > 0) {
      eo.sizes.assign(sizes, sizes + n_sizes);
      for (int n : eo.sizes)
        if (n < 17)
          return fail(ACCRETE_INVALID_ARGUMENT,
                      "eikonal grid sizes must be at least 17");
    }
    auto rep = std::make_unique<accrete_report>();
    if (s == "hypotheses")
      rep->value = accrete::verify_hypotheses(c.material, c.seed);
    else if (s == "eikonal")
      rep->value = accrete::verify_eikonal(eo);
    else if (s == "equilibrium")
      rep->value = accrete::verify_equilibrium(c);
    else if (s == "all")
      rep->value = accrete::verify_all(c, eo);
    else
      return fail(ACCRETE_INVALID_ARGUMENT,
                  "unknown suite '" + s +
                      "' (hypotheses, eikonal, equilibrium or all)");
    rep->json = rep->value.json();
    rep->text = rep->value.text();
    const bool ok = rep->value.passed();
    const int failures = rep->value.failures();
    *out = rep.release();
    return ok ? ACCRETE_OK
              : fail(ACCRETE_VERIFY_FAILED,
                     std::to_string(failures) + " check(s) failed");
  });
}

int accrete_report_passed(const accrete_report* report) {
  return report && report->value.passed() ? 1 : 0;
}

int accrete_report_failures(const accrete_report* report) {
  return report ? report->value.failures() : 0;
}

const char* accrete_report_json(const accrete_report* report) {
  return report ? report->json.c_str() : "";
}

const char* accrete_report_text(const accrete_report* report) {
  return report ? report->text.c_str() : "";
}

void accrete_report_free(accrete_report* report) { delete report; }

accrete_status accrete_export(const char* dir, const char* format,
                              const double* times, size_t n_times,
                              char** written) {
  if (!dir)
    return missing("dir");
  if (!format)
    return missing("format");
  if (n_times > 0 && !times)
    return missing("times");
  if (written)
    *written = nullptr;
  return guarded([&] {
    const auto files = accrete::export_run(
        dir, format, std::vector<double>(times, times + n_times));
    if (written) {
      std::string list;
      for (const auto& f : files)
        list += f.string() + '\n';
      *written = copy_string(list);
    }
    return ACCRETE_OK;
  });
}

}  // extern "C"
