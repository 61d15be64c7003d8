/*
 * spingate C API.
 *
 * Every function returns an sg_status; on failure a human-readable message for the calling
 * thread is available from sg_last_error() until the next API call on that thread. Objects are
 * opaque handles released with their matching *_destroy function (NULL is accepted).
 * Frequencies cross this boundary in units of 2pi MHz, times in microseconds.
 */
#ifndef SPINGATE_SPINGATE_H
#define SPINGATE_SPINGATE_H

#include <stddef.h>

#if defined(_WIN32)
#  define SG_API __declspec(dllexport)
#else
#  define SG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_INVALID_ARGUMENT = 1, /* NULL handle, bad index, unknown name */
  SG_ERR_PARSE = 2,            /* malformed config text or value */
  SG_ERR_VALIDATION = 3,       /* out-of-range parameter */
  SG_ERR_CONTRACT = 4,         /* violated operation precondition */
  SG_ERR_DOMAIN = 5,
  SG_ERR_INTEGRATION = 6,      /* integrator failure (also inside a sweep) */
  SG_ERR_NOT_BRACKETED = 7,    /* threshold search interval does not straddle the threshold */
  SG_ERR_IO = 8,
  SG_ERR_INTERNAL = 99
} sg_status;

typedef struct sg_config sg_config;
typedef struct sg_gate_run sg_gate_run;
typedef struct sg_sweep sg_sweep;
typedef struct sg_validation sg_validation;

SG_API const char* sg_last_error(void);
SG_API const char* sg_status_name(sg_status status);
SG_API const char* sg_version(void);

/* Strings returned through char** are owned by the caller. */
SG_API void sg_string_free(char* s);

/* ---- configuration ---------------------------------------------------- */

/* Default configuration (NOT gate, rotating frame). */
SG_API sg_status sg_config_create(sg_config** out);
SG_API void sg_config_destroy(sg_config* config);
/* Defaults overlaid with `text` (key = value lines), then validated. */
SG_API sg_status sg_config_parse(const char* text, sg_config** out);
/* Overlays `text` without validating; call sg_config_validate once all overrides are applied. */
SG_API sg_status sg_config_load(sg_config* config, const char* text);
SG_API sg_status sg_config_set(sg_config* config, const char* key, const char* value);
SG_API sg_status sg_config_get(const sg_config* config, const char* key, char** value);
SG_API sg_status sg_config_validate(const sg_config* config);
SG_API sg_status sg_config_serialize(const sg_config* config, char** text);

/* ---- single pulse ----------------------------------------------------- */

/* Runs the configured gate at `delta` over one pi-pulse, sampled `samples` + 1 times. */
SG_API sg_status sg_gate_run_create(const sg_config* config, sg_gate_run** out);
SG_API void sg_gate_run_destroy(sg_gate_run* run);
SG_API sg_status sg_gate_run_fidelity(const sg_gate_run* run, double* m1, double* m2, double* m3);
SG_API sg_status sg_gate_run_dimension(const sg_gate_run* run, size_t* dimension);
SG_API sg_status sg_gate_run_final_populations(const sg_gate_run* run, double* populations,
                                               size_t capacity);
SG_API sg_status sg_gate_run_norm_drift(const sg_gate_run* run, double* drift);
SG_API sg_status sg_gate_run_duration(const sg_gate_run* run, double* microseconds);
SG_API sg_status sg_gate_run_drive(const sg_gate_run* run, double* drive);
/* Trajectory CSV; path NULL, "" or "-" writes to stdout. */
SG_API sg_status sg_gate_run_write_csv(const sg_gate_run* run, const char* path);

/* ---- delta sweeps ----------------------------------------------------- */

/* `jobs` worker threads, 0 = all cores. Results do not depend on `jobs`. */
SG_API sg_status sg_sweep_create(const sg_config* config, unsigned jobs, sg_sweep** out);
SG_API void sg_sweep_destroy(sg_sweep* sweep);
SG_API sg_status sg_sweep_row_count(const sg_sweep* sweep, size_t* rows);
SG_API sg_status sg_sweep_row(const sg_sweep* sweep, size_t index, double* delta, double* m1,
                              double* m2, double* m3);
/* *found = 0 when the grid does not bracket a crossing. */
SG_API sg_status sg_sweep_threshold(const sg_sweep* sweep, int* found, double* delta);
SG_API sg_status sg_sweep_write_csv(const sg_sweep* sweep, const char* path);

/* Bisection-refined first crossing of the fidelity threshold over [delta_min, delta_max]. */
SG_API sg_status sg_find_threshold(const sg_config* config, unsigned jobs, double* delta_star);

/* ---- consistency checks ------------------------------------------------ */

SG_API sg_status sg_validation_create(const sg_config* config, sg_validation** out);
SG_API void sg_validation_destroy(sg_validation* validation);
SG_API sg_status sg_validation_count(const sg_validation* validation, size_t* count);
/* `name` stays valid for the lifetime of the handle. */
SG_API sg_status sg_validation_check(const sg_validation* validation, size_t index,
                                     const char** name, double* value, double* limit,
                                     int* passed);

/* gnuplot script for a CSV produced by the *_write_csv functions. */
SG_API sg_status sg_gnuplot_script(const char* csv_path, int sweep, size_t dimension, char** script);

#ifdef __cplusplus
}
#endif

#endif /* SPINGATE_SPINGATE_H */
