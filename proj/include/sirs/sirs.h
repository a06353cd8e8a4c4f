/* C interface to the switched SIRS toolkit.
 *
 * Objects are opaque handles created by *_create / *_parse / simulate calls and
 * released by the matching *_destroy. Every fallible call returns a
 * sirs_status; on failure a description is available from sirs_last_error()
 * (thread-local, valid until the next failing call on the same thread).
 * Strings returned through char** are owned by the caller and released with
 * sirs_string_free. */
#ifndef SIRS_SIRS_H
#define SIRS_SIRS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SIRS_BUILDING_LIBRARY)
#    define SIRS_API __declspec(dllexport)
#  else
#    define SIRS_API __declspec(dllimport)
#  endif
#else
#  define SIRS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sirs_status {
  SIRS_OK = 0,
  SIRS_ERR_INVALID_PARAMETER = 1,
  SIRS_ERR_NOT_APPLICABLE = 2,
  SIRS_ERR_NUMERICAL_INSTABILITY = 3,
  SIRS_ERR_UNRESOLVED_THRESHOLD = 4,
  SIRS_ERR_CONFIG_PARSE = 5,
  SIRS_ERR_IO = 6,
  SIRS_ERR_INTERNAL = 7
} sirs_status;

typedef enum sirs_env { SIRS_ENV_PLUS = 0, SIRS_ENV_MINUS = 1 } sirs_env;

typedef enum sirs_regime {
  SIRS_REGIME_EXTINCTION = 0,
  SIRS_REGIME_PERSISTENT = 1,
  SIRS_REGIME_PERMANENT = 2,
  SIRS_REGIME_DEGENERATE_COMMON_EQUILIBRIUM = 3
} sirs_regime;

typedef struct sirs_env_params {
  double a;
  double b;
  double c;
} sirs_env_params;

typedef struct sirs_regime_report {
  double lambda;
  double r0_plus;
  double r0_minus;
  sirs_regime classification;
  int has_predicted_limit;
  double limit_s;
  double limit_i;
  int labels_swapped;
} sirs_regime_report;

typedef struct sirs_sample {
  double t;
  sirs_env env;
  double s;
  double i;
  double r;
  int is_switch;
} sirs_sample;

typedef struct sirs_model sirs_model;
typedef struct sirs_trajectory sirs_trajectory;
typedef struct sirs_scenario sirs_scenario;

SIRS_API const char* sirs_version(void);
SIRS_API const char* sirs_last_error(void);
SIRS_API const char* sirs_status_name(sirs_status status);
/* Process exit code for a status: 0 ok, 2 config, 3 precondition,
 * 4 numerical instability, 1 otherwise. */
SIRS_API int sirs_status_exit_code(sirs_status status);
SIRS_API void sirs_string_free(char* text);

/* ---- model ---- */
SIRS_API sirs_status sirs_model_create(const sirs_env_params* plus, const sirs_env_params* minus,
                                       double N, double alpha, double beta, sirs_model** out);
SIRS_API void sirs_model_destroy(sirs_model* model);
SIRS_API sirs_status sirs_model_lambda(const sirs_model* model, double* out);
SIRS_API sirs_status sirs_model_stationary_probabilities(const sirs_model* model, double* p,
                                                         double* q);
SIRS_API sirs_status sirs_model_classify(const sirs_model* model, sirs_regime_report* out);
SIRS_API sirs_status sirs_model_is_proportional(const sirs_model* model, double tol, int* out);
SIRS_API sirs_status sirs_model_equilibrium(const sirs_model* model, sirs_env env, double* s,
                                            double* i, int* endemic);

/* ---- trajectories ---- */
SIRS_API sirs_status sirs_simulate(const sirs_model* model, double s0, double i0,
                                   sirs_env initial_env, double horizon, double step,
                                   double sample_interval, uint64_t seed,
                                   sirs_trajectory** out);
SIRS_API void sirs_trajectory_destroy(sirs_trajectory* traj);
SIRS_API size_t sirs_trajectory_size(const sirs_trajectory* traj);
SIRS_API sirs_status sirs_trajectory_sample(const sirs_trajectory* traj, size_t index,
                                            sirs_sample* out);
/* Trapezoidal average of a(xi) N - b(xi) over the trajectory. */
SIRS_API sirs_status sirs_trajectory_growth_average(const sirs_trajectory* traj, double* out);
SIRS_API sirs_status sirs_trajectory_write_csv(const sirs_trajectory* traj, const char* path);

/* ---- scenarios (what the command-line tool drives) ---- */
SIRS_API sirs_status sirs_scenario_parse(const char* json_text, sirs_scenario** out);
SIRS_API sirs_status sirs_scenario_preset(const char* name, sirs_scenario** out);
SIRS_API void sirs_scenario_destroy(sirs_scenario* scenario);
SIRS_API sirs_status sirs_scenario_set_seed(sirs_scenario* scenario, uint64_t seed);
SIRS_API sirs_status sirs_scenario_set_horizon(sirs_scenario* scenario, double horizon);
SIRS_API sirs_status sirs_scenario_set_replicas(sirs_scenario* scenario, int replicas);
SIRS_API sirs_status sirs_scenario_set_output_dir(sirs_scenario* scenario, const char* dir);
/* Output directory in the config, or NULL. Borrowed pointer. */
SIRS_API const char* sirs_scenario_output_dir(const sirs_scenario* scenario);
SIRS_API sirs_status sirs_scenario_serialize(const sirs_scenario* scenario, char** json_out);
/* Diagnostics as a JSON array of {"path","message"}; *count_out = length. */
SIRS_API sirs_status sirs_scenario_validate(const sirs_scenario* scenario, char** json_out,
                                            size_t* count_out);
/* Runs into the scenario's output directory (set or configured). On success
 * *json_out is the summary document; on failure it is an error document
 * {"status":"error","kind":...,"message":...}. */
SIRS_API sirs_status sirs_scenario_run(const sirs_scenario* scenario, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* SIRS_SIRS_H */
