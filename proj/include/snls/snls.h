#ifndef SNLS_SNLS_H
#define SNLS_SNLS_H

/* C interface to the snls library. All handles are opaque; every function
 * that can fail returns an snls_status and leaves a thread-local message
 * retrievable with snls_last_error(). */

#include <stddef.h>
#include <stdint.h>

#if defined(SNLS_BUILDING_LIBRARY)
#define SNLS_API __attribute__((visibility("default")))
#else
#define SNLS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum snls_status {
  SNLS_OK = 0,
  SNLS_ERR_INVALID_ARGUMENT = 1,
  SNLS_ERR_CONFIG = 2,
  SNLS_ERR_IO = 3,
  SNLS_ERR_STEP_REJECTED = 4,
  SNLS_ERR_EXPERIMENT_INVALID = 5,
  SNLS_ERR_INTERNAL = 6
} snls_status;

typedef struct snls_config snls_config;
typedef struct snls_field snls_field;
typedef struct snls_path snls_path;

SNLS_API const char* snls_version(void);
/* Message of the last failure on this thread ("" if none). */
SNLS_API const char* snls_last_error(void);
SNLS_API const char* snls_status_name(snls_status s);

/* ---- configuration ---------------------------------------------------- */
SNLS_API snls_status snls_config_new(snls_config** out);
SNLS_API snls_status snls_config_load(const char* path, snls_config** out);
SNLS_API snls_status snls_config_parse(const char* text, snls_config** out);
SNLS_API snls_status snls_config_set(snls_config* cfg, const char* key, const char* value);
SNLS_API snls_status snls_config_set_seed(snls_config* cfg, uint64_t seed);
SNLS_API void snls_config_free(snls_config* cfg);

/* ---- fields ------------------------------------------------------------ */
/* re_im holds 2(2K+1) doubles: re, im for k = -K..K. NULL gives zeros. */
SNLS_API snls_status snls_field_new(int K, const double* re_im, snls_field** out);
SNLS_API snls_status snls_field_load(const char* path, snls_field** out);
SNLS_API snls_status snls_field_save(const snls_field* f, const char* path);
SNLS_API int snls_field_mode_cutoff(const snls_field* f);
SNLS_API snls_status snls_field_get(const snls_field* f, double* re_im, size_t len);
SNLS_API snls_status snls_field_mass(const snls_field* f, double* out);
SNLS_API snls_status snls_field_energy(const snls_field* f, double lambda, double* out);
SNLS_API snls_status snls_field_sobolev(const snls_field* f, double alpha, double* out);
SNLS_API void snls_field_free(snls_field* f);

/* ---- noise ------------------------------------------------------------- */
SNLS_API snls_status snls_path_sample(uint64_t seed, double horizon, int level, int K, snls_path** out);
SNLS_API double snls_path_endpoint(const snls_path* p, int k);
SNLS_API void snls_path_free(snls_path* p);

/* ---- stepping ---------------------------------------------------------- */
typedef struct snls_step_params {
  double lambda;
  double kappa;
  double alpha;
  double tol;
  int max_iter;
  double divergence_factor;
} snls_step_params;

SNLS_API snls_step_params snls_step_params_default(void);

/* One midpoint step over [tn, tn + t] of path; default covariance 1/k^2. */
SNLS_API snls_status snls_midpoint_step(const snls_field* u, const snls_step_params* params, const snls_path* path,
                                        double tn, double t, snls_field** out, int* iterations, double* residual);

/* ---- experiments ------------------------------------------------------- */
typedef struct snls_conservation_summary {
  double max_mass_drift;
  double final_mass_drift;
  double max_energy_drift;
  long rows;
  int completed;
  long failed_step;
} snls_conservation_summary;

typedef struct snls_error_summary {
  double slope;
  double slope_residual;
  double full_slope;
  int fitted_rows;
  int rows;
  int degenerate;
} snls_error_summary;

typedef struct snls_symplectic_summary {
  int K;
  double t;
  double h;
  double defect_h;
  double defect_h2;
} snls_symplectic_summary;

/* out_csv may be NULL. */
SNLS_API snls_status snls_run_conservation(const snls_config* cfg, const char* out_csv, snls_conservation_summary* out);
SNLS_API snls_status snls_run_local_error(const snls_config* cfg, const char* out_csv, snls_error_summary* out);
SNLS_API snls_status snls_run_kernel_error(const snls_config* cfg, const char* out_csv, snls_error_summary* out);
SNLS_API snls_status snls_run_symplectic(const snls_config* cfg, snls_symplectic_summary* out);
/* Writes the run record (and snapshots) to out_csv; on a rejected step the
 * partial record is still written and SNLS_ERR_STEP_REJECTED returned. */
SNLS_API snls_status snls_run_simulate(const snls_config* cfg, const char* out_csv, long* rows_written);

#ifdef __cplusplus
}
#endif

#endif /* SNLS_SNLS_H */
