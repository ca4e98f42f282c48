/* Copyright 2026 The HDP Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the Hellinger differential privacy library.
 *
 * Conventions:
 *   - Every fallible function returns hdp_status. On failure the outputs are
 *     untouched and hdp_last_error() describes the failure for the calling
 *     thread until its next failing call.
 *   - Objects are opaque handles created by *_create / *_load / functions
 *     returning them through an out pointer, and released by *_destroy.
 *     Destroying NULL is a no-op.
 *   - HDP budgets are in Hellinger units (squared Hellinger distance, at
 *     most 2). Power-divergence budgets take (lambda, epsilon).
 *   - Text outputs are copied into a caller buffer. *needed receives the
 *     length including the terminating NUL; a buffer that is too small
 *     yields HDP_ERR_INVALID_ARGUMENT and *needed is still set.
 */

#ifndef HDP_HDP_H_
#define HDP_HDP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HDP_BUILDING_LIBRARY)
#define HDP_API __declspec(dllexport)
#else
#define HDP_API __declspec(dllimport)
#endif
#else
#define HDP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HDP_OK = 0,
  HDP_ERR_INVALID_ARGUMENT = 1,
  HDP_ERR_UNSUPPORTED = 2,
  HDP_ERR_NUMERICAL = 3,
  HDP_ERR_IO = 4,
  HDP_ERR_INTERNAL = 5
} hdp_status;

HDP_API const char* hdp_last_error(void);
HDP_API const char* hdp_status_name(hdp_status status);
HDP_API const char* hdp_version(void);

/* ---- Divergences between additive-noise output distributions ---------- */

/* Power divergence of order lambda between N(0, s^2 I) and N(v, s^2 I),
 * where v_norm = |v|_2. */
HDP_API hdp_status hdp_gaussian_power_divergence(double v_norm, double sigma,
                                                 double lambda, double* out);
/* Squared Hellinger distance between N(0, s^2 I) and N(v, s^2 I). */
HDP_API hdp_status hdp_hellinger_sq_gaussians(double v_norm, double sigma,
                                              double* out);
/* Exact power divergence between product Laplace(0, b) and Laplace(v, b). */
HDP_API hdp_status hdp_laplace_power_divergence_exact(const double* v,
                                                      size_t dim, double b,
                                                      double lambda,
                                                      double* out);
/* Upper bound depending on v only through |v|_1. */
HDP_API hdp_status hdp_laplace_power_divergence_bound(double v_l1, double b,
                                                      double lambda,
                                                      double* out);

/* ---- Mechanism calibration -------------------------------------------- */

typedef enum { HDP_NOISE_GAUSSIAN = 0, HDP_NOISE_LAPLACE = 1 } hdp_noise_kind;

typedef struct {
  hdp_noise_kind kind;
  /* Standard deviation (Gaussian) or scale b (Laplace). */
  double scale;
  double variance;
  double sensitivity;
  int dim;
} hdp_noise_spec;

HDP_API hdp_status hdp_calibrate_gaussian_pdp(double sensitivity, double lambda,
                                              double epsilon, int dim,
                                              hdp_noise_spec* out);
HDP_API hdp_status hdp_calibrate_gaussian_hdp(double sensitivity,
                                              double epsilon, int dim,
                                              hdp_noise_spec* out);
HDP_API hdp_status hdp_calibrate_laplace_pdp(double sensitivity, double lambda,
                                             double epsilon, int dim,
                                             hdp_noise_spec* out);
HDP_API hdp_status hdp_calibrate_laplace_hdp_exact_1d(double sensitivity,
                                                      double epsilon,
                                                      hdp_noise_spec* out);
/* (-8 log(1 - eps/2))^{-1/2}; zero at eps = 2. */
HDP_API hdp_status hdp_noise_scale_c(double epsilon, double* out);

/* ---- Composition ------------------------------------------------------- */

HDP_API hdp_status hdp_compose_pdp(double e1, double e2, double lambda,
                                   double* out);
HDP_API hdp_status hdp_compose_hdp(double e1, double e2, double* out);
HDP_API hdp_status hdp_compose_hdp_k(double eps_per_step, int k, double* out);
HDP_API hdp_status hdp_compose_pdp_k(double eps_per_step, int k, double lambda,
                                     double* out);
HDP_API hdp_status hdp_solve_per_step_epsilon(double eps_total, int k,
                                              double* out);
HDP_API hdp_status hdp_solve_per_step_epsilon_pdp(double eps_total, int k,
                                                  double lambda, double* out);
HDP_API hdp_status hdp_parallel_compose_hdp(double e1, double e2, double* out);
HDP_API hdp_status hdp_group_privacy_hdp(double epsilon, int k, double* out);

/* ---- Conversion -------------------------------------------------------- */

HDP_API hdp_status hdp_hdp_to_approx_dp(double epsilon, double* dp_epsilon,
                                        double* dp_delta);
/* *exists is 0 (and *mu untouched) when no finite GDP parameter exists. */
HDP_API hdp_status hdp_hdp_to_gdp(double epsilon, double* mu, int* exists);
HDP_API hdp_status hdp_pdp_to_rdp(double lambda, double epsilon,
                                  double* rdp_alpha, double* rdp_epsilon,
                                  double* rdp_epsilon_loose);
HDP_API hdp_status hdp_pdp_to_approx_dp(double lambda, double epsilon,
                                        double delta, double* dp_epsilon);

/* ---- Datasets ---------------------------------------------------------- */

typedef struct hdp_dataset hdp_dataset;

HDP_API hdp_status hdp_dataset_create(const double* values, size_t count,
                                      hdp_dataset** out);
/* One value per line; blank lines and lines starting with '#' skipped. */
HDP_API hdp_status hdp_dataset_load(const char* path, hdp_dataset** out);
HDP_API size_t hdp_dataset_size(const hdp_dataset* dataset);
HDP_API void hdp_dataset_destroy(hdp_dataset* dataset);
HDP_API hdp_status hdp_silverman_bandwidth(const hdp_dataset* dataset,
                                           double* out);
/* theta[0] = mean, theta[1] = maximum-likelihood standard deviation. */
HDP_API hdp_status hdp_mle(const hdp_dataset* dataset, double theta[2]);

/* ---- Estimation -------------------------------------------------------- */

typedef enum { HDP_ALGO_GD = 0, HDP_ALGO_NR = 1 } hdp_algorithm;
typedef enum {
  HDP_CORRECTION_VERBATIM = 0,
  HDP_CORRECTION_SQUARED = 1,
  HDP_CORRECTION_CALIBRATED = 2
} hdp_correction;
typedef enum { HDP_COV_SANDWICH = 0, HDP_COV_PRIVATE = 1 } hdp_cov_mode;
typedef enum {
  HDP_START_FIXED = 0,
  HDP_START_ROBUST = 1,
  HDP_START_MOMENTS = 2,
  HDP_START_AUTO = 3
} hdp_start_mode;

typedef struct {
  hdp_algorithm algorithm;
  /* 0 selects K automatically from n. */
  int iterations;
  /* Used by automatic K; 0 selects the default constant. */
  double k_constant;
  double learning_rate;
  /* HDP units when lambda = -0.5; +inf requests no privacy. */
  double epsilon;
  double lambda;
  double sensitivity_exponent;
  /* Nonzero selects the n^{-1/2} sensitivity regime. */
  int weak_sensitivity;
  /* Weak-regime constant; 0 uses the model constants. */
  double weak_constant;
  double hessian_floor;
  double sigma_min;
  uint64_t seed;
  int mc_multiplier;
  /* 0 selects the Silverman bandwidth. */
  double bandwidth;
  /* 0 disables truncation. */
  double truncation;
  double level;
  hdp_correction correction;
  hdp_cov_mode cov_mode;
  hdp_start_mode start;
  double start_mu;
  double start_sigma;
} hdp_estimate_options;

HDP_API void hdp_estimate_options_init(hdp_estimate_options* options);

typedef struct {
  double estimate[2];
  double plain_lo[2];
  double plain_hi[2];
  double corrected_lo[2];
  double corrected_hi[2];
  /* Covariance of sqrt(n) (estimate - theta), row major. */
  double cov[4];
  double level;
  double critical_value;
  double epsilon_total;
} hdp_ci_report;

typedef struct hdp_estimate_result hdp_estimate_result;

HDP_API hdp_status hdp_estimate(const hdp_dataset* dataset,
                                const hdp_estimate_options* options,
                                hdp_estimate_result** out);
HDP_API void hdp_estimate_result_destroy(hdp_estimate_result* result);
HDP_API hdp_status hdp_estimate_result_ci(const hdp_estimate_result* result,
                                          hdp_ci_report* out);
/* Budget of the estimate alone, and of estimate plus covariance release
 * (loose and exact). */
HDP_API hdp_status hdp_estimate_result_epsilon(
    const hdp_estimate_result* result, double* estimate, double* with_cov_loose,
    double* with_cov);
HDP_API int hdp_estimate_result_iterations(const hdp_estimate_result* result);
HDP_API double hdp_estimate_result_bandwidth(const hdp_estimate_result* result);
HDP_API size_t hdp_estimate_result_mc_samples(
    const hdp_estimate_result* result);
/* Per-iteration budget, and the budget of each of the two releases of a
 * Newton-Raphson step. */
HDP_API hdp_status hdp_estimate_result_budget_split(
    const hdp_estimate_result* result, double* eps_per_step,
    double* eps_per_release);
/* Iterate k in [0, iterations]; loss is clamped to [0, 4]. */
HDP_API hdp_status hdp_estimate_result_trace_point(
    const hdp_estimate_result* result, int k, double* mu, double* sigma,
    double* loss, double* eps_spent);
/* CSV rep,iter,mu,sigma,loss,eps_spent with rep = 0. */
HDP_API hdp_status hdp_estimate_result_write_trace(
    const hdp_estimate_result* result, const char* path);

/* Intervals for a given estimate (mu, sigma) under the options. */
HDP_API hdp_status hdp_ci_for_estimate(const hdp_dataset* dataset,
                                       const hdp_estimate_options* options,
                                       double mu, double sigma,
                                       hdp_ci_report* out);

/* ---- Simulation -------------------------------------------------------- */

typedef struct hdp_sim_config hdp_sim_config;
typedef struct hdp_sim_result hdp_sim_result;

HDP_API hdp_status hdp_sim_config_create(hdp_sim_config** out);
HDP_API hdp_status hdp_sim_config_preset(const char* name,
                                         hdp_sim_config** out);
HDP_API hdp_status hdp_sim_config_load(const char* path, hdp_sim_config** out);
/* Applies one key/value pair of the config file format. */
HDP_API hdp_status hdp_sim_config_set(hdp_sim_config* config, const char* key,
                                      const char* value);
HDP_API hdp_status hdp_sim_config_validate(const hdp_sim_config* config);
HDP_API hdp_status hdp_sim_config_format(const hdp_sim_config* config,
                                         char* buffer, size_t capacity,
                                         size_t* needed);
HDP_API void hdp_sim_config_destroy(hdp_sim_config* config);
HDP_API size_t hdp_preset_count(void);
/* NULL when index is out of range. */
HDP_API const char* hdp_preset_name(size_t index);

typedef struct {
  size_t n;
  double alpha;
  double epsilon;
  int reps;
  int n_failed;
  int n_thresholded;
  double mean[2];
  double se[2];
  double coverage_corrected[2];
  double coverage_uncorrected[2];
  double mean_all[2];
  double se_all[2];
} hdp_cell_summary;

typedef struct {
  size_t n;
  double alpha;
  int reps;
  int n_failed;
  double mean[2];
  double se[2];
  double coverage[2];
} hdp_mle_summary;

HDP_API hdp_status hdp_simulate(const hdp_sim_config* config,
                                hdp_sim_result** out);
HDP_API void hdp_sim_result_destroy(hdp_sim_result* result);
HDP_API size_t hdp_sim_result_cell_count(const hdp_sim_result* result);
HDP_API hdp_status hdp_sim_result_cell(const hdp_sim_result* result,
                                       size_t index, hdp_cell_summary* out);
HDP_API size_t hdp_sim_result_mle_count(const hdp_sim_result* result);
HDP_API hdp_status hdp_sim_result_mle(const hdp_sim_result* result,
                                      size_t index, hdp_mle_summary* out);
/* Main table CSV for the configured n. */
HDP_API hdp_status hdp_sim_result_table_csv(const hdp_sim_result* result,
                                            char* buffer, size_t capacity,
                                            size_t* needed);
/* Writes every output file into dir. */
HDP_API hdp_status hdp_sim_result_write(const hdp_sim_result* result,
                                        const char* dir,
                                        int write_replications);

#ifdef __cplusplus
}
#endif

#endif /* HDP_HDP_H_ */
