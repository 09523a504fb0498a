#ifndef BANDITLAB_H
#define BANDITLAB_H

/* C interface to the bandit simulation library: experiment runs, bound
 * evaluation, verification-lab suites and plot rendering. All functions
 * return bl_status; on failure bl_last_error_message() carries a
 * human-readable diagnostic for the calling thread. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bl_status {
  BL_OK = 0,
  BL_INVALID_ARGUMENT = 1,
  BL_RUNTIME_ERROR = 2,
  BL_IO_ERROR = 3,
  BL_OUT_OF_MEMORY = 4,
  BL_UNKNOWN_ERROR = 5
} bl_status;

const char* bl_status_name(bl_status status);
const char* bl_version(void);
/* Diagnostic for the calling thread's most recent failed call; empty string
 * when the last call succeeded. The buffer stays valid until the thread's
 * next library call. */
const char* bl_last_error_message(void);

/* ---- Experiments -------------------------------------------------------- */

typedef struct bl_experiment bl_experiment;

/* Loads a key = value configuration file. */
bl_status bl_experiment_open(const char* config_path, bl_experiment** out);
/* Bundled setups: "exp1", "exp2", "exp2-desk". */
bl_status bl_experiment_open_preset(const char* preset, bl_experiment** out);
bl_status bl_experiment_set_output_dir(bl_experiment* exp, const char* dir);
bl_status bl_experiment_set_workers(bl_experiment* exp, int workers);
/* "pseudo" (realized gaps) or "expected" (policy gaps); selects the regret
 * series used by the emitted plots. */
bl_status bl_experiment_set_regret_mode(bl_experiment* exp, const char* mode);
/* Runs every replication, then writes results.csv, regret.svg and
 * norm_variance.svg into the output directory. */
bl_status bl_experiment_run(bl_experiment* exp);
void bl_experiment_close(bl_experiment* exp);

/* ---- Bound evaluation --------------------------------------------------- */

typedef struct bl_bound_inputs {
  int64_t t;          /* rounds played, >= 1 */
  int num_arms;       /* >= 2 */
  double delta;       /* confidence parameter in (0,1) */
  double epsilon;     /* exploration floor at t, > 0 */
  double lambda;      /* deviation parameter; read when has_lambda */
  double range_bound; /* martingale range cap; read when has_range_bound */
  double kl;          /* mixture KL; read when has_kl, else ln(num_arms) */
  double variance;    /* cumulative variance; read when has_variance */
  int has_lambda;
  int has_range_bound;
  int has_kl;
  int has_variance;
} bl_bound_inputs;

typedef struct bl_bound_report {
  double kl_value;
  double deviation_width;  /* theorem2_bound column value */
  double spectrum_regret;  /* theorem3_bound column value */
  double variance_cap;     /* 2 t / epsilon */
  double pac_bayes;        /* valid when has_pac_bayes */
  double lambda_opt;       /* valid when has_lambda_opt */
  double balanced_bound;   /* valid when has_balanced_bound */
  int has_pac_bayes;
  int has_lambda_opt;
  int has_balanced_bound;
  int exploration_floor_ok; /* eq5_satisfied flag */
  int lambda_range_ok;      /* valid when has_lambda_range */
  int has_lambda_range;
} bl_bound_report;

bl_status bl_evaluate_bounds(const bl_bound_inputs* inputs, bl_bound_report* out);

/* ---- Verification lab --------------------------------------------------- */

/* Runs the inequality suites, moment checks and coverage studies. Writes a
 * plain-text table to text_path and a CSV to csv_path when non-NULL, and
 * stores 1 into all_pass_out (may be NULL) iff every check passed. */
bl_status bl_run_lab(int64_t suite_cases, int64_t mgf_samples, int64_t coverage_runs,
                     int64_t coverage_horizon, uint64_t seed, const char* text_path,
                     const char* csv_path, int* all_pass_out);

/* ---- Plot rendering ----------------------------------------------------- */

/* Re-renders regret.svg and norm_variance.svg under out_dir from a results
 * CSV. regret_mode is "pseudo", "expected" or NULL (pseudo). series is a
 * comma-separated list of algorithm labels, NULL for all. */
bl_status bl_render_plots(const char* csv_path, const char* out_dir, const char* regret_mode,
                          const char* series);

#ifdef __cplusplus
}
#endif

#endif /* BANDITLAB_H */
