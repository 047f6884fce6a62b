#ifndef FMGAME_FMGAME_H
#define FMGAME_FMGAME_H

/* C interface to the foundation-model licensing game solver.
 *
 * Every function returns an fmg_status. On failure the message of the most
 * recent error on the calling thread is available from fmg_last_error().
 * Output structs are written only on success. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(FMG_BUILDING_LIBRARY)
#    define FMG_API __declspec(dllexport)
#  else
#    define FMG_API __declspec(dllimport)
#  endif
#else
#  define FMG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fmg_status {
  FMG_OK = 0,
  FMG_NULL_ARGUMENT = 1,
  FMG_INVALID_ARGUMENT = 2,
  FMG_IO = 3,
  FMG_CONFIG = 4,
  FMG_INVALID_PARAMS = 5,
  FMG_DOMAIN = 6,
  FMG_INTERNAL = 7
} fmg_status;

typedef enum fmg_regime { FMG_HARVEST = 0, FMG_DEFEND = 1, FMG_DOMINATE = 2 } fmg_regime;

typedef enum fmg_developer { FMG_INCUMBENT = 0, FMG_ENTRANT = 1 } fmg_developer;

typedef enum fmg_scenario {
  FMG_SCENARIO_BASELINE = 0,
  FMG_SCENARIO_MANDATE = 1,
  FMG_SCENARIO_INTEGRATION = 2,
  FMG_SCENARIO_SUBSIDY = 3
} fmg_scenario;

typedef enum fmg_crossing_kind {
  FMG_CROSSING_ROOT = 0,
  FMG_CROSSING_ALWAYS = 1,
  FMG_CROSSING_NEVER = 2,
  FMG_CROSSING_IRREGULAR = 3
} fmg_crossing_kind;

typedef enum fmg_interval {
  FMG_INTERVAL_HARVEST_BOTH = 0,
  FMG_INTERVAL_DEFEND_TO_HARVEST = 1,
  FMG_INTERVAL_DELAYED_DOMINATE = 2,
  FMG_INTERVAL_OTHER = 3
} fmg_interval;

typedef struct fmg_params {
  double theta;
  double c;
  double w_high;
  double w_low;
  double eta_cap;
  double k;
  double s;
} fmg_params;

typedef struct fmg_period {
  double effort;
  double engagement;
  double fee_paid;
  double openness;
} fmg_period;

typedef struct fmg_equilibrium {
  fmg_regime regime;
  double w1;
  double eta1;
  fmg_period period1;
  fmg_period period2;
  fmg_developer winner2;
  double w2;
  double w2_tilde;
  double eta2;
  double eta2_tilde;
} fmg_equilibrium;

typedef struct fmg_welfare {
  double dev1;
  double dev2;
  double deployer;
  double consumer;
  double social;
} fmg_welfare;

typedef struct fmg_thresholds {
  double k_max;
  double k_bar_1;
  double k_bar_2;
  double k_bar_12;
  double k_bar_13;
  double k_bar_23;
  double eta_bar_high;
  double eta_bar_low;
  int eta_prime_defined;
  double eta_prime;
} fmg_thresholds;

typedef struct fmg_integrated {
  double eta1v;
  double eta2v;
  double q1v;
  double q2v;
  double profit;
  double consumer;
  double social;
} fmg_integrated;

typedef struct fmg_crossing {
  fmg_crossing_kind kind;
  double k;
  double residual;
  int sign_changes;
  int at_jump; /* sign flips across a regime change rather than through zero */
} fmg_crossing;

typedef struct fmg_trap {
  int found;
  double k_bar;
  double residual;
  int at_jump;
} fmg_trap;

typedef struct fmg_subsidized {
  fmg_equilibrium eq;
  double subsidy_spend;
  double k_bar_1g;
  double k_bar_2g;
  double eta_bar_hg;
  double eta_bar_lg;
  fmg_welfare welfare;
  double social_net_of_subsidy;
} fmg_subsidized;

typedef struct fmg_policy {
  fmg_equilibrium baseline;
  fmg_equilibrium counterfactual;
  fmg_welfare baseline_welfare;
  fmg_welfare counterfactual_welfare;
  fmg_welfare delta;
  double subsidy_spend;
  fmg_interval interval;
} fmg_policy;

typedef struct fmg_oracle_config {
  int eta_grid_points;
  double effort_search;
  int k_grid_points;
  int integrated_grid_points;
  int threads;
} fmg_oracle_config;

typedef struct fmg_oracle_result {
  fmg_equilibrium eq;
  double incumbent_profit;
  int high_fee_period2_wins;
  double eta_step;
} fmg_oracle_result;

typedef struct fmg_verify_options {
  double rel_tol;
  double profit_rel_tol;
  double abs_tol;
  int k_grid;
  int random_sets;
  unsigned long long seed;
  fmg_oracle_config oracle;
} fmg_verify_options;

typedef struct fmg_sweep_spec {
  const char* parameter; /* "k" or "s" */
  double lo;
  double hi;
  int steps;
  fmg_scenario scenario;
} fmg_sweep_spec;

typedef struct fmg_model fmg_model;

/* Called once per verification check as soon as it finishes. */
typedef void (*fmg_check_fn)(const char* name, int passed, const char* detail, void* user);
/* Receives sweep output; returns nonzero to signal a write failure. */
typedef int (*fmg_write_fn)(const char* data, size_t size, void* user);

FMG_API fmg_status fmg_model_create(const fmg_params* params, fmg_model** out);
FMG_API fmg_status fmg_model_load(const char* config_path, fmg_model** out);
FMG_API void fmg_model_destroy(fmg_model* model);
FMG_API fmg_status fmg_model_get_params(const fmg_model* model, fmg_params* out);
FMG_API fmg_status fmg_model_set(fmg_model* model, const char* name, double value);
/* FMG_OK when the parameters are admissible, FMG_INVALID_PARAMS otherwise;
 * the violations are then listed in fmg_last_error(). */
FMG_API fmg_status fmg_model_validate(const fmg_model* model);

FMG_API fmg_status fmg_k_max(const fmg_model* model, double* out);
FMG_API fmg_status fmg_regime_thresholds(const fmg_model* model, fmg_thresholds* out);
FMG_API fmg_status fmg_solve_baseline(const fmg_model* model, fmg_equilibrium* out);
FMG_API fmg_status fmg_solve_subsidized(const fmg_model* model, fmg_subsidized* out);

FMG_API fmg_status fmg_welfare_baseline(const fmg_model* model, fmg_welfare* out);
FMG_API fmg_status fmg_welfare_mandate(const fmg_model* model, fmg_welfare* out);
FMG_API fmg_status fmg_openness_trap_threshold(const fmg_model* model, fmg_trap* out);

FMG_API fmg_status fmg_solve_integrated(const fmg_model* model, fmg_integrated* out);
FMG_API fmg_status fmg_integration_thresholds(const fmg_model* model, fmg_crossing* chain_profit,
                                              fmg_crossing* consumer, fmg_crossing* social);
FMG_API fmg_status fmg_subsidy_comparison(const fmg_model* model, fmg_policy* out);
FMG_API fmg_status fmg_mandate_comparison(const fmg_model* model, fmg_policy* out);

FMG_API void fmg_oracle_config_default(fmg_oracle_config* out);
FMG_API fmg_status fmg_oracle_solve_game(const fmg_model* model, const fmg_oracle_config* config,
                                         fmg_oracle_result* out);
FMG_API fmg_status fmg_oracle_solve_integrated(const fmg_model* model,
                                               const fmg_oracle_config* config,
                                               fmg_integrated* out);

FMG_API void fmg_verify_options_default(fmg_verify_options* out);
/* Runs the verification suite. *failed receives the number of failed checks. */
FMG_API fmg_status fmg_verify(const fmg_model* model, const fmg_verify_options* options,
                              fmg_check_fn on_check, void* user, int* failed);

FMG_API fmg_status fmg_sweep_csv(const fmg_model* model, const fmg_sweep_spec* spec,
                                 fmg_write_fn write, void* user);
/* Streams the sweep to a file, or to stdout when path is NULL or "-". */
FMG_API fmg_status fmg_sweep_csv_file(const fmg_model* model, const fmg_sweep_spec* spec,
                                      const char* path);

FMG_API const char* fmg_last_error(void);
FMG_API const char* fmg_status_name(fmg_status status);
FMG_API const char* fmg_regime_name(fmg_regime regime);
FMG_API const char* fmg_scenario_name(fmg_scenario scenario);
FMG_API fmg_status fmg_parse_scenario(const char* name, fmg_scenario* out);

#ifdef __cplusplus
}
#endif

#endif
