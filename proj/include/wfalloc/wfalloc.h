/*
 * Copyright 2026 The Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libwfalloc: waterfilling, submodularity checks, online
 * basestation allocation and competitive-ratio experiments.
 *
 * Conventions:
 *  - Every fallible call returns a wf_status. On failure the out-parameters
 *    are left untouched and wf_last_error() describes the problem; the
 *    message is thread-local and valid until the next failing call on the
 *    same thread.
 *  - Objects are opaque handles created by wf_*_create / wf_* producers and
 *    released with the matching wf_*_free. Freeing NULL is a no-op.
 *  - Indices (channels, users, basestations) are zero-based.
 *  - Handles other than wf_records are immutable once returned and may be
 *    read from several threads at once.
 */

#ifndef WFALLOC_WFALLOC_H_
#define WFALLOC_WFALLOC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WF_API __declspec(dllexport)
#elif defined(__GNUC__)
#define WF_API __attribute__((visibility("default")))
#else
#define WF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wf_status {
  WF_OK = 0,
  WF_ERR_INVALID_ARGUMENT = 1,
  WF_ERR_TOO_LARGE = 2,
  WF_ERR_IO = 3,
  WF_ERR_PARSE = 4,
  WF_ERR_INTERNAL = 5
} wf_status;

typedef enum wf_profile {
  WF_PROFILE_IID_UNIT = 0,
  WF_PROFILE_IID_TEN = 1,
  WF_PROFILE_MIXED_HALF = 2,
  WF_PROFILE_SPARSE_STRONG = 3,
  WF_PROFILE_CORRELATED = 4
} wf_profile;

typedef enum wf_strategy {
  WF_STRATEGY_GREEDY = 0,          /* marginal-gain online greedy */
  WF_STRATEGY_GREEDY_ABSOLUTE = 1, /* greedy on absolute utility */
  WF_STRATEGY_MAX_WEIGHT = 2
} wf_strategy;

typedef enum wf_reference {
  WF_REFERENCE_BRUTE_FORCE = 0,
  WF_REFERENCE_ANALYTIC_UPPER = 1
} wf_reference;

WF_API const char* wf_version(void);
WF_API const char* wf_last_error(void);
WF_API const char* wf_status_name(wf_status status);
/* Name of the pseudo-random generator behind every generated matrix. */
WF_API const char* wf_rng_name(void);

/* Name <-> enum conversions using the CLI spellings, e.g. "iid-ten",
 * "greedy-absolute", "analytic-upper". */
WF_API wf_status wf_profile_from_name(const char* name, wf_profile* out);
WF_API wf_status wf_strategy_from_name(const char* name, wf_strategy* out);
WF_API wf_status wf_reference_from_name(const char* name, wf_reference* out);
WF_API const char* wf_profile_name(wf_profile profile);
WF_API const char* wf_strategy_name(wf_strategy strategy);
WF_API const char* wf_reference_name(wf_reference reference);

/* ---- Waterfilling ------------------------------------------------------ */

typedef struct wf_solution wf_solution;

/* Solves waterfilling for `count` channels with the given noise variances.
 * count may be 0 and budget may be 0; both yield rate 0 and no level. */
WF_API wf_status wf_waterfill(const double* noises, size_t count, double budget,
                              wf_solution** out);
WF_API void wf_solution_free(wf_solution* solution);
WF_API size_t wf_solution_channels(const wf_solution* solution);
/* Nonzero when a water level exists (nonempty set, positive budget). */
WF_API int wf_solution_has_level(const wf_solution* solution);
WF_API double wf_solution_level(const wf_solution* solution);
WF_API double wf_solution_rate(const wf_solution* solution);
WF_API double wf_solution_power(const wf_solution* solution, size_t channel);
WF_API int wf_solution_is_active(const wf_solution* solution, size_t channel);

/* Basestation log-utility of users with the given SNRs. */
WF_API wf_status wf_log_utility(const double* snrs, size_t count, double budget,
                                double* out);

/* ---- Submodularity checks ---------------------------------------------- */

typedef struct wf_lab_report wf_lab_report;

typedef struct wf_violation {
  uint32_t base_set; /* bitmask over channel indices */
  size_t elem_i;
  size_t elem_j;
  double lhs;
  double rhs;
  double gap;
} wf_violation;

/* Runs the pairwise submodularity check (up to 12 channels), the
 * monotonicity check and the set-pair check (both up to 8 channels; skipped
 * above that) on the waterfilling rate of the given profile. */
WF_API wf_status wf_check_waterfill(const double* noises, size_t count,
                                    double budget, double tolerance,
                                    wf_lab_report** out);
WF_API void wf_lab_report_free(wf_lab_report* report);
WF_API size_t wf_lab_report_pairwise_count(const wf_lab_report* report);
WF_API wf_status wf_lab_report_pairwise(const wf_lab_report* report,
                                        size_t index, wf_violation* out);
/* Number of violations, or -1 when the check was skipped. */
WF_API long wf_lab_report_monotone_count(const wf_lab_report* report);
WF_API long wf_lab_report_setpair_count(const wf_lab_report* report);
/* Largest pairwise gap f(S)+f(S+i+j)-f(S+i)-f(S+j) over all triples,
 * violating or not. */
WF_API double wf_lab_report_max_gap(const wf_lab_report* report);
/* Pairwise violations as CSV (base_set,i,j,lhs,rhs,gap). */
WF_API wf_status wf_lab_report_write_csv(const wf_lab_report* report,
                                         const char* path);

/* ---- Weight matrices --------------------------------------------------- */

typedef struct wf_matrix wf_matrix;

WF_API wf_status wf_matrix_create(const double* row_major, size_t users,
                                  size_t basestations, wf_matrix** out);
WF_API wf_status wf_matrix_generate(wf_profile profile, size_t users,
                                    size_t basestations, uint64_t seed,
                                    wf_matrix** out);
WF_API wf_status wf_matrix_read_csv(const char* path, wf_matrix** out);
/* path NULL writes to stdout. */
WF_API wf_status wf_matrix_write_csv(const wf_matrix* matrix, const char* path);
WF_API void wf_matrix_free(wf_matrix* matrix);
WF_API size_t wf_matrix_users(const wf_matrix* matrix);
WF_API size_t wf_matrix_basestations(const wf_matrix* matrix);
WF_API double wf_matrix_at(const wf_matrix* matrix, size_t user, size_t bs);

/* ---- Allocation -------------------------------------------------------- */

/* Runs a strategy in row order. owners must hold wf_matrix_users() entries;
 * either out-pointer may be NULL. */
WF_API wf_status wf_allocate(const wf_matrix* matrix, wf_strategy strategy,
                             size_t* owners, double* utility);
/* System utility of an explicit assignment. */
WF_API wf_status wf_system_utility(const wf_matrix* matrix, const size_t* owners,
                                   double* out);
/* Exhaustive offline optimum; WF_ERR_TOO_LARGE when m^n > 1e6. */
WF_API wf_status wf_offline_optimum(const wf_matrix* matrix, size_t* owners,
                                    double* value);
WF_API wf_status wf_offline_upper_bound(const wf_matrix* matrix, double* out);

typedef struct wf_ratio_report {
  double online_utility;
  double offline_reference;
  wf_reference reference_kind;
  double ratio; /* +inf when only the online utility is zero */
} wf_ratio_report;

WF_API wf_status wf_competitive_ratio(const wf_matrix* matrix,
                                      wf_strategy strategy,
                                      wf_reference reference,
                                      wf_ratio_report* out);

/* ---- Experiments ------------------------------------------------------- */

typedef struct wf_experiment_config {
  wf_profile profile;
  size_t users;
  size_t basestations;
  size_t trials;
  const wf_strategy* strategies;
  size_t strategy_count;
  wf_reference reference;
  uint64_t seed;
  /* Optional: when non-NULL every trial uses this matrix. */
  const wf_matrix* fixed_instance;
} wf_experiment_config;

typedef struct wf_record {
  size_t trial;
  size_t n;
  size_t m;
  const char* profile; /* owned by the record set */
  wf_strategy strategy;
  double utility;
  double offline_bound;
  wf_reference reference_kind;
  double ratio;
  uint64_t seed;
} wf_record;

typedef struct wf_records wf_records;

WF_API wf_status wf_records_create(wf_records** out);
WF_API void wf_records_free(wf_records* records);
/* Runs the experiment and appends its records. */
WF_API wf_status wf_run_experiment(const wf_experiment_config* config,
                                   wf_records* records);
WF_API size_t wf_records_size(const wf_records* records);
WF_API wf_status wf_records_get(const wf_records* records, size_t index,
                                wf_record* out);
/* path NULL writes to stdout. */
WF_API wf_status wf_records_write_csv(const wf_records* records,
                                      const char* path);
/* Per-(profile, strategy, n) mean/max ratio table as CSV; path NULL writes
 * to stderr. */
WF_API wf_status wf_records_write_summary(const wf_records* records,
                                          const char* path);

#ifdef __cplusplus
}
#endif

#endif /* WFALLOC_WFALLOC_H_ */
