/*
 *   Copyright 2026 The wlpr Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */

/* C interface of the wlpr library: subdivision schemes built from weighted
 * local polynomial regression, their refinement engine, convergence
 * certification and capability metrics. Handles are opaque; every function
 * returns a wlpr_status and writes results through out-parameters. Strings
 * and buffers returned by the library are freed with wlpr_string_free /
 * wlpr_buffer_free. */

#ifndef WLPR_WLPR_H
#define WLPR_WLPR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WLPR_API __declspec(dllexport)
#else
#define WLPR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wlpr_status {
  WLPR_OK = 0,
  WLPR_ERR_INVALID_ARGUMENT = 1,
  WLPR_ERR_INTEGER_BANDWIDTH = 2,
  WLPR_ERR_BANDWIDTH_TOO_SMALL = 3,
  WLPR_ERR_DEGREE_TOO_HIGH = 4,
  WLPR_ERR_SINGULAR = 5,
  WLPR_ERR_QUADRATURE = 6,
  WLPR_ERR_DATA_TOO_SHORT = 7,
  WLPR_ERR_LEVEL_BUDGET = 8,
  WLPR_ERR_MASK_NOT_POSITIVE = 9,
  WLPR_ERR_NOT_PI0 = 10,
  WLPR_ERR_OUT_OF_SCOPE = 11,
  WLPR_ERR_IO = 12,
  WLPR_ERR_INTERNAL = 13
} wlpr_status;

typedef enum wlpr_boundary {
  WLPR_BOUNDARY_PERIODIC = 0,
  WLPR_BOUNDARY_CONSTANT = 1,
  WLPR_BOUNDARY_REFLECT = 2
} wlpr_boundary;

/* Static message for a status code. */
WLPR_API const char* wlpr_strerror(wlpr_status status);
/* Detail for the most recent failure on this thread; valid until the next
 * failing call. */
WLPR_API const char* wlpr_last_error(void);

WLPR_API void wlpr_string_free(char* s);
WLPR_API void wlpr_buffer_free(double* buf);

/* ---- schemes and masks ------------------------------------------------- */

typedef struct wlpr_scheme wlpr_scheme;
typedef struct wlpr_mask wlpr_mask;

/* kernel grammar: rect | tria | epan | bisq | tcub | trwt | exp:<xi> |
 * pq:<p>:<q>; lambda must be non-integer and > 1; degree <= 2n-1. */
WLPR_API wlpr_status wlpr_scheme_create(const char* kernel, double lambda,
                                        int degree, wlpr_scheme** out);
WLPR_API void wlpr_scheme_destroy(wlpr_scheme* scheme);
WLPR_API int wlpr_scheme_n(const wlpr_scheme* scheme);
/* 0: odd rule longer (2n-1 < lambda < 2n); 1: even rule longer. */
WLPR_API int wlpr_scheme_situation(const wlpr_scheme* scheme);

WLPR_API wlpr_status wlpr_mask_build(const wlpr_scheme* scheme,
                                     wlpr_mask** out);
WLPR_API void wlpr_mask_destroy(wlpr_mask* mask);

WLPR_API size_t wlpr_mask_even_count(const wlpr_mask* mask);
WLPR_API size_t wlpr_mask_odd_count(const wlpr_mask* mask);
WLPR_API int wlpr_mask_even_first_index(const wlpr_mask* mask);
WLPR_API int wlpr_mask_odd_first_index(const wlpr_mask* mask);
WLPR_API int wlpr_mask_dd_coincident(const wlpr_mask* mask);
WLPR_API wlpr_status wlpr_mask_even(const wlpr_mask* mask, double* buf,
                                    size_t capacity);
WLPR_API wlpr_status wlpr_mask_odd(const wlpr_mask* mask, double* buf,
                                   size_t capacity);
/* Mask + report as JSON ({spec, situation, even, odd, first_index, ...};
 * exact num/den pairs included when the kernel/bandwidth admit them). */
WLPR_API wlpr_status wlpr_mask_to_json(const wlpr_mask* mask, char** out_json);

/* ---- refinement --------------------------------------------------------- */

/* values: count*dim doubles. Periodic output has count<<levels samples;
 * the extension policies produce (count-1)*2^levels + 1. */
WLPR_API wlpr_status wlpr_refine(const wlpr_mask* mask, const double* values,
                                 size_t count, size_t dim,
                                 wlpr_boundary boundary, int levels,
                                 double** out_values, size_t* out_count);
/* File-level variant: CSV in (columns x[,y]) or JSON (by .json extension);
 * output in the same format with level metadata and abscissae. */
WLPR_API wlpr_status wlpr_refine_file(const wlpr_mask* mask,
                                      const char* in_csv_path,
                                      const char* out_csv_path,
                                      wlpr_boundary boundary, int levels);

/* ---- convergence -------------------------------------------------------- */

/* Difference-scheme sub-mask l1 norms; max < 1 certifies convergence. */
WLPR_API wlpr_status wlpr_mask_difference_norms(const wlpr_mask* mask,
                                                double* q0_l1, double* q1_l1);
WLPR_API wlpr_status wlpr_mask_positive_verdict(const wlpr_mask* mask,
                                                int* verdict);
/* Family sweep over n = 2..n_max with bandwidth 2n-1+delta (situation 0) or
 * 2n+delta (situation 1). mu/alpha may be NULL; rect d=2,3 supplies its own
 * asymptotic constants. exact != 0 selects the rational rect d=3 route.
 * Returns a JSON report. */
WLPR_API wlpr_status wlpr_certify_family(const char* kernel, int degree,
                                         int situation, double delta,
                                         int n_max, const double* mu,
                                         const double* alpha, int exact,
                                         int include_norm_table,
                                         char** out_json);
/* lim |R|_1 of the d=2,3 family for this kernel. */
WLPR_API wlpr_status wlpr_r_l1_norm(const char* kernel, double tol,
                                    double* out);

/* ---- metrics ------------------------------------------------------------ */

WLPR_API wlpr_status wlpr_mask_eta(const wlpr_mask* mask, int degree,
                                   double* out);
WLPR_API wlpr_status wlpr_mask_denoise_factor(const wlpr_mask* mask,
                                              double* out);
/* Asymptotic capability pair (2|I_m(H)|, |H|_2^2), m = 2 or 4. */
WLPR_API wlpr_status wlpr_capability_scores(const char* kernel, int degree,
                                            double* approx_const,
                                            double* h_l2sq);
/* CSV: p,q,approx_const,h_l2sq,dominated,label over the (p,q) grid plus the
 * named reference kernels. */
WLPR_API wlpr_status wlpr_pareto_csv(int degree, double p_min, double p_max,
                                     double q_min, double q_max, int steps,
                                     char** out_csv);

/* ---- experiments -------------------------------------------------------- */

/* config: JSON {name: star-curve|lambda-scaling|gibbs|staircase|basic-limits,
 * kernel, lambda, degree, levels, k, noise: {distribution, sigma|a,b, seed},
 * out}. Writes data files under "out" when set; returns the summary JSON. */
WLPR_API wlpr_status wlpr_experiment_run(const char* config_json,
                                         char** out_summary_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WLPR_WLPR_H */
