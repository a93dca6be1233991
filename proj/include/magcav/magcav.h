/*
 * magcav: steady-state entanglement and squeezing of a squeezed-driven
 * two-cavity / one-magnon system.
 *
 * Plain C interface over opaque handles. Every call that can fail returns a
 * magcav_status; the message of the most recent failure on the calling
 * thread is available from magcav_last_error(). Strings returned by the
 * library are owned by the handle they came from and stay valid until that
 * handle is destroyed.
 */
#ifndef MAGCAV_MAGCAV_H
#define MAGCAV_MAGCAV_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MAGCAV_BUILDING)
#    define MAGCAV_API __declspec(dllexport)
#  else
#    define MAGCAV_API __declspec(dllimport)
#  endif
#else
#  define MAGCAV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum magcav_status {
  MAGCAV_OK = 0,
  MAGCAV_ERR_INVALID_ARGUMENT = 1,  /* null handle, bad index, ... */
  MAGCAV_ERR_INVALID_PARAMETERS = 2,
  MAGCAV_ERR_INVALID_CONFIG = 3,
  MAGCAV_ERR_UNKNOWN_PRESET = 4,
  MAGCAV_ERR_SINGULAR = 5,          /* singular mean-field system */
  MAGCAV_ERR_NO_UNIQUE_SOLUTION = 6,/* marginal Lyapunov operator */
  MAGCAV_ERR_NUMERICAL = 7,
  MAGCAV_ERR_BUDGET_EXCEEDED = 8,
  MAGCAV_ERR_UNDEFINED_LOCUS = 9,
  MAGCAV_ERR_IO = 10,
  MAGCAV_ERR_INTERNAL = 11
} magcav_status;

/* Grid/point quantities. The first MAGCAV_CSV_COLUMNS entries are the CSV
 * columns, in order. */
typedef enum magcav_quantity {
  MAGCAV_Q_AXIS1 = 0,
  MAGCAV_Q_AXIS2,
  MAGCAV_Q_STABLE,
  MAGCAV_Q_N1,
  MAGCAV_Q_N2,
  MAGCAV_Q_NM,
  MAGCAV_Q_E_A1M,
  MAGCAV_Q_E_A2M,
  MAGCAV_Q_E_A1A2,
  MAGCAV_Q_R_TAU_MIN,
  MAGCAV_Q_VAR_X1,
  MAGCAV_Q_VAR_Y1,
  MAGCAV_Q_VAR_X2,
  MAGCAV_Q_VAR_Y2,
  MAGCAV_Q_VAR_X,
  MAGCAV_Q_VAR_Y,
  MAGCAV_Q_SQ_X_DB,
  MAGCAV_Q_SQ_Y_DB,
  MAGCAV_Q_SQ_Y2_DB,
  MAGCAV_Q_LOW_EXC_RATIO,
  MAGCAV_Q_MAX_RE_EIG,        /* rad/s */
  MAGCAV_Q_LYAPUNOV_RESIDUAL,
  MAGCAV_Q_COUNT
} magcav_quantity;

#define MAGCAV_CSV_COLUMNS 20

typedef enum magcav_point_status {
  MAGCAV_POINT_OK = 0,
  MAGCAV_POINT_UNSTABLE = 1,
  MAGCAV_POINT_ERROR = 2
} magcav_point_status;

typedef struct magcav_config magcav_config;
typedef struct magcav_point magcav_point;
typedef struct magcav_grid magcav_grid;
typedef struct magcav_validation magcav_validation;

MAGCAV_API const char* magcav_version(void);
MAGCAV_API const char* magcav_last_error(void);
MAGCAV_API const char* magcav_status_string(magcav_status status);
/* Column name as used in the CSV header and the JSON summary. */
MAGCAV_API const char* magcav_quantity_name(magcav_quantity q);

/* ---- configuration ---------------------------------------------------- */

/* A fresh config holds the documented defaults (the working point). */
MAGCAV_API magcav_status magcav_config_create(magcav_config** out);
MAGCAV_API void magcav_config_destroy(magcav_config* cfg);
/* Values carry units, e.g. "10 GHz", "-20 kappaM", "10 mK". */
MAGCAV_API magcav_status magcav_config_set(magcav_config* cfg, const char* key,
                                           const char* value);
MAGCAV_API magcav_status magcav_config_load_file(magcav_config* cfg,
                                                 const char* path);
/* Returns NULL when the key is unset. Valid until the next set/load. */
MAGCAV_API const char* magcav_config_get(const magcav_config* cfg,
                                         const char* key);
MAGCAV_API size_t magcav_config_key_count(void);
MAGCAV_API const char* magcav_config_key_name(size_t index);
MAGCAV_API const char* magcav_config_key_default(size_t index);
MAGCAV_API const char* magcav_config_key_help(size_t index);
/* Number of sweep workers the config asks for. */
MAGCAV_API unsigned magcav_config_workers(const magcav_config* cfg);

MAGCAV_API size_t magcav_preset_count(void);
MAGCAV_API const char* magcav_preset_name(size_t index);

/* ---- single point ----------------------------------------------------- */

/* Succeeds for unstable points too; check magcav_point_state(). */
MAGCAV_API magcav_status magcav_point_run(const magcav_config* cfg,
                                          magcav_point** out);
MAGCAV_API void magcav_point_destroy(magcav_point* pt);
MAGCAV_API magcav_point_status magcav_point_state(const magcav_point* pt);
/* NaN for masked quantities; axis quantities are NaN for a point. */
MAGCAV_API magcav_status magcav_point_get(const magcav_point* pt,
                                          magcav_quantity q, double* out);
/* Drift-matrix eigenvalues in rad/s, 6 entries each. */
MAGCAV_API magcav_status magcav_point_eigenvalues(const magcav_point* pt,
                                                  double* re, double* im);
/* Row-major 6x6 covariance; MAGCAV_ERR_INVALID_ARGUMENT when unstable. */
MAGCAV_API magcav_status magcav_point_covariance(const magcav_point* pt,
                                                 double* out36);
MAGCAV_API const char* magcav_point_report(const magcav_point* pt);
MAGCAV_API const char* magcav_point_json(const magcav_point* pt);

/* ---- grids ------------------------------------------------------------ */

/* Needs `preset` or `axis1` in the config. */
MAGCAV_API magcav_status magcav_grid_run(const magcav_config* cfg,
                                         unsigned workers, magcav_grid** out);
MAGCAV_API void magcav_grid_destroy(magcav_grid* grid);
MAGCAV_API size_t magcav_grid_size(const magcav_grid* grid);
MAGCAV_API magcav_status magcav_grid_get(const magcav_grid* grid, size_t index,
                                         magcav_quantity q, double* out);
MAGCAV_API magcav_status magcav_grid_counts(const magcav_grid* grid,
                                            size_t* stable, size_t* unstable,
                                            size_t* errors);
/* Max over stable points and its location. *found is 0 when no stable point
 * has the quantity. */
MAGCAV_API magcav_status magcav_grid_max(const magcav_grid* grid,
                                         magcav_quantity q, int* found,
                                         double* value, double* axis1,
                                         double* axis2);
MAGCAV_API magcav_status magcav_grid_write_csv(const magcav_grid* grid,
                                               const char* path);
MAGCAV_API const char* magcav_grid_summary_json(const magcav_grid* grid);

/* ---- oracle battery --------------------------------------------------- */

/* tolerance <= 0 keeps each oracle's own tolerance. */
MAGCAV_API magcav_status magcav_validate_run(double tolerance,
                                             magcav_validation** out);
MAGCAV_API void magcav_validation_destroy(magcav_validation* v);
MAGCAV_API size_t magcav_validation_count(const magcav_validation* v);
MAGCAV_API magcav_status magcav_validation_entry(const magcav_validation* v,
                                                 size_t index,
                                                 const char** name, int* passed,
                                                 double* worst,
                                                 double* tolerance,
                                                 const char** detail);
MAGCAV_API int magcav_validation_all_passed(const magcav_validation* v);

#ifdef __cplusplus
}
#endif

#endif /* MAGCAV_MAGCAV_H */
