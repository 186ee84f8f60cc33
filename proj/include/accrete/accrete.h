/* SPDX-License-Identifier: Apache-2.0 */

/* C interface to the accrete library. Every handle is opaque and owned by
 * the caller, who releases it with the matching *_free function. Functions
 * that can fail return an accrete_status; the message of the most recent
 * failure on the calling thread is available from accrete_last_error. */

#ifndef ACCRETE_H
#define ACCRETE_H

#include <stddef.h>

#if defined(ACCRETE_BUILDING_LIBRARY)
#define ACCRETE_API __attribute__((visibility("default")))
#else
#define ACCRETE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum accrete_status {
  ACCRETE_OK = 0,
  ACCRETE_INVALID_ARGUMENT = 1,
  ACCRETE_CONFIG_ERROR = 2,
  ACCRETE_NONCONVERGED = 3,
  ACCRETE_VERIFY_FAILED = 4,
  ACCRETE_IO_ERROR = 5,
  ACCRETE_INTERNAL_ERROR = 6
} accrete_status;

typedef struct accrete_config accrete_config;
typedef struct accrete_run accrete_run;
typedef struct accrete_report accrete_report;

ACCRETE_API const char* accrete_version(void);

/* Message of the last failed call on this thread, "" if none. */
ACCRETE_API const char* accrete_last_error(void);

/* Releases strings returned through char** out parameters. */
ACCRETE_API void accrete_string_free(char* s);

/* ---- configuration ---------------------------------------------------- */

/* The bundled reference configuration. */
ACCRETE_API accrete_status accrete_config_reference(accrete_config** out);

/* INI text or file. validate = 0 skips the load-time gates so that verify
 * can report a broken parameter set as failing checks. */
ACCRETE_API accrete_status accrete_config_parse(const char* text, int validate,
                                                accrete_config** out);
ACCRETE_API accrete_status accrete_config_load(const char* path, int validate,
                                               accrete_config** out);

/* Sets "section.key" from its text form and revalidates, unless the config
 * was loaded with validate = 0. On failure the config is unchanged. */
ACCRETE_API accrete_status accrete_config_set(accrete_config* config,
                                              const char* key,
                                              const char* value);

/* Resolved text value of "section.key". */
ACCRETE_API accrete_status accrete_config_get(const accrete_config* config,
                                              const char* key, char** out);

ACCRETE_API accrete_status accrete_config_validate(const accrete_config* config);

/* Fully resolved INI text. */
ACCRETE_API accrete_status accrete_config_to_ini(const accrete_config* config,
                                                 char** out);

ACCRETE_API void accrete_config_free(accrete_config* config);

/* ---- coupled runs ----------------------------------------------------- */

typedef struct accrete_iterate_metrics {
  int k;
  double theta_change;
  double y_change;     /* negative at k = 1 */
  double speed_change; /* negative at k = 1 */
  double speed_bound;  /* negative at k = 1 */
  double min_det;
  double max_residual;
  double cumulative_dissipation;
  int minimality_violations;
  double attachment_stress;
  int nonconverged_steps;
  int bound_violations;
  double front_clearance;
  double seconds;
  int failed_step;
} accrete_iterate_metrics;

typedef void (*accrete_iterate_callback)(const accrete_iterate_metrics* m,
                                         void* user);

/* Runs the coupled problem. Returns ACCRETE_OK when the outer loop
 * converged and ACCRETE_NONCONVERGED when it did not or a step missed its
 * tolerance; in both cases *out holds the run. callback may be NULL. */
ACCRETE_API accrete_status accrete_run_coupled(const accrete_config* config,
                                               accrete_iterate_callback callback,
                                               void* user, accrete_run** out);

/* Writes every run artifact into dir (created if needed). */
ACCRETE_API accrete_status accrete_run_write(const accrete_run* run,
                                             const char* dir);

ACCRETE_API int accrete_run_converged(const accrete_run* run);
ACCRETE_API int accrete_run_iterations(const accrete_run* run);
ACCRETE_API const char* accrete_run_message(const accrete_run* run);

ACCRETE_API accrete_status accrete_run_grid(const accrete_run* run, int* nx,
                                            int* ny, double* h);

/* Copies theta (nx*ny values, node j*nx + i) into out. */
ACCRETE_API accrete_status accrete_run_theta(const accrete_run* run,
                                             double* out, size_t n);

/* Copies the final deformation (2*nx*ny values, x then y per node). */
ACCRETE_API accrete_status accrete_run_final_y(const accrete_run* run,
                                               double* out, size_t n);

ACCRETE_API void accrete_run_free(accrete_run* run);

/* ---- verification ----------------------------------------------------- */

/* suite is "hypotheses", "eikonal", "equilibrium" or "all". sizes overrides
 * the eikonal grid sizes when n_sizes > 0. Returns ACCRETE_OK when every
 * check passed and ACCRETE_VERIFY_FAILED otherwise; *out holds the report
 * either way. */
ACCRETE_API accrete_status accrete_verify(const accrete_config* config,
                                          const char* suite, const int* sizes,
                                          size_t n_sizes, accrete_report** out);

ACCRETE_API int accrete_report_passed(const accrete_report* report);
ACCRETE_API int accrete_report_failures(const accrete_report* report);
ACCRETE_API const char* accrete_report_json(const accrete_report* report);
ACCRETE_API const char* accrete_report_text(const accrete_report* report);
ACCRETE_API void accrete_report_free(accrete_report* report);

/* ---- export ----------------------------------------------------------- */

/* Converts a run directory; format is "vtk", "csv" or "fronts". times
 * (for fronts) may be NULL. *written receives the newline-separated list of
 * files produced and may be NULL. */
ACCRETE_API accrete_status accrete_export(const char* dir, const char* format,
                                          const double* times, size_t n_times,
                                          char** written);

#ifdef __cplusplus
}
#endif

#endif
