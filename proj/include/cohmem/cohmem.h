// Copyright 2026 The cohmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COHMEM_COHMEM_H_
#define COHMEM_COHMEM_H_

/* C interface to the cohmem library. Objects are opaque handles released
 * with the matching *_free function. Every call returns a status code; on
 * failure cohmem_last_error() describes the problem (per thread). */

#include <stdint.h>

#if defined(COHMEM_BUILDING_LIBRARY)
#define COHMEM_API __attribute__((visibility("default")))
#else
#define COHMEM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  COHMEM_OK = 0,
  COHMEM_ERR_PARSE = 1,
  COHMEM_ERR_VALIDATION = 2,
  COHMEM_ERR_NUMERIC = 3,
  COHMEM_ERR_UNSUPPORTED = 4,
  COHMEM_ERR_INFEASIBLE = 5,
  COHMEM_ERR_IO = 6,
  COHMEM_ERR_ARGUMENT = 7,
  COHMEM_ERR_INTERNAL = 8
} cohmem_status;

typedef struct cohmem_channel cohmem_channel;
typedef struct cohmem_dataset cohmem_dataset;
typedef struct cohmem_unitary cohmem_unitary;

COHMEM_API const char* cohmem_last_error(void);
COHMEM_API const char* cohmem_status_name(cohmem_status s);
COHMEM_API const char* cohmem_version(void);
/* Releases strings returned through char** out-parameters. */
COHMEM_API void cohmem_string_free(char* s);

/* ---- channels ---- */

/* "identity", "phase-flip:p", "bit-flip:p", "amplitude-damping:p",
 * "depolarizing:p", "planar:a:b", "mp-minus", "mp-plus". */
COHMEM_API cohmem_status cohmem_channel_from_builtin(const char* spec, cohmem_channel** out);
COHMEM_API cohmem_status cohmem_channel_from_json(const char* text, cohmem_channel** out);
COHMEM_API cohmem_status cohmem_channel_from_file(const char* path, cohmem_channel** out);
/* lambda is row-major 3x3. No positivity check. */
COHMEM_API cohmem_status cohmem_channel_from_affine(const double lambda[9], const double kappa[3],
                                                    cohmem_channel** out);
COHMEM_API void cohmem_channel_free(cohmem_channel* ch);
COHMEM_API cohmem_status cohmem_channel_dim(const cohmem_channel* ch, int* dim);
/* Qubit channels only. */
COHMEM_API cohmem_status cohmem_channel_affine(const cohmem_channel* ch, double lambda[9], double kappa[3]);
/* Smallest eigenvalue of the trace-one Choi state. */
COHMEM_API cohmem_status cohmem_channel_choi_min_eigenvalue(const cohmem_channel* ch, double* out);
/* Caller frees *json with cohmem_string_free. */
COHMEM_API cohmem_status cohmem_channel_to_json(const cohmem_channel* ch, char** json);

typedef struct {
  int n_starts;            /* Fibonacci seeds per axis, >= 8 */
  int refine_candidates;
  double local_tol;
  double margin;           /* a threshold counts as exceeded only beyond this */
  int assume_unital;       /* apply the unital thresholds */
} cohmem_quality_options;

COHMEM_API void cohmem_quality_options_default(cohmem_quality_options* opts);

typedef struct {
  double q_minus, q_zero, q_plus;
  double upper_minus, upper_plus;  /* closed-form upper bounds */
  double lower_minus, lower_plus;  /* closed-form lower bounds */
  double singular_values[3];       /* ascending */
  int completely_positive;
  int measure_and_prepare;
  int unital;                      /* kappa = 0 within 1e-9 */
  int certified_non_mp;            /* 1: certified, 0: inconclusive */
  char reasons[256];               /* "; "-separated exceeded thresholds */
} cohmem_quality_report;

/* Qubit channels only; COHMEM_ERR_VALIDATION when not completely positive. */
COHMEM_API cohmem_status cohmem_quality(const cohmem_channel* ch, const cohmem_quality_options* opts,
                                        cohmem_quality_report* out);

/* ---- certification from coherence data ---- */

COHMEM_API cohmem_status cohmem_dataset_uniform(double c, cohmem_dataset** out);
COHMEM_API cohmem_status cohmem_dataset_from_json(const char* text, cohmem_dataset** out);
COHMEM_API cohmem_status cohmem_dataset_from_file(const char* path, cohmem_dataset** out);
COHMEM_API void cohmem_dataset_free(cohmem_dataset* d);

typedef struct {
  int starts;
  uint64_t seed;
  int threads;             /* 0: hardware concurrency */
  double feasibility_tol;
} cohmem_certify_options;

COHMEM_API void cohmem_certify_options_default(cohmem_certify_options* opts);

typedef struct {
  double lower_bound;
  int converged;
  int feasible_starts;
  int certified_non_mp;    /* lower_bound > 1/sqrt(5) */
  double lambda[9];        /* certificate channel, row-major */
  double kappa[3];
  double inputs[9];        /* three input Bloch vectors */
  double outputs[9];
} cohmem_certify_report;

/* COHMEM_ERR_INFEASIBLE when no compatible channel was found. */
COHMEM_API cohmem_status cohmem_certify(const cohmem_dataset* d, const cohmem_certify_options* opts,
                                        cohmem_certify_report* out);
/* n evenly spaced c values in [a, b]; *csv holds "c,lower_bound,converged"
 * rows with the running maximum. Free with cohmem_string_free. */
COHMEM_API cohmem_status cohmem_sweep_csv(double a, double b, int n, const cohmem_certify_options* opts,
                                          char** csv);

/* ---- unitaries, Sinkhorn form ---- */

/* "identity:D", "hadamard", "fourier:D" or "random:D" (Haar, from seed). */
COHMEM_API cohmem_status cohmem_unitary_from_spec(const char* spec, uint64_t seed, cohmem_unitary** out);
COHMEM_API cohmem_status cohmem_unitary_from_json(const char* text, cohmem_unitary** out);
COHMEM_API cohmem_status cohmem_unitary_from_file(const char* path, cohmem_unitary** out);
COHMEM_API void cohmem_unitary_free(cohmem_unitary* u);
COHMEM_API cohmem_status cohmem_unitary_dim(const cohmem_unitary* u, int* dim);

typedef struct {
  int dim;
  double z1_re[4], z1_im[4];       /* diagonals */
  double z2_re[4], z2_im[4];
  double x_re[16], x_im[16];       /* row-major dim x dim */
  double residual;
  double alpha[4], beta[4];        /* common maximally coherent phases */
  double witness_residual;
  double witness_coherence;        /* robustness of U Z_alpha |+> in the reference basis */
} cohmem_sinkhorn_report;

COHMEM_API cohmem_status cohmem_sinkhorn(const cohmem_unitary* u, double tol, cohmem_sinkhorn_report* out);

/* ---- high-dimensional Q0 bound ---- */

typedef enum { COHMEM_GUESS_IDENTITY = 0, COHMEM_GUESS_BEST_FIT = 1, COHMEM_GUESS_GIVEN = 2 } cohmem_guess;

typedef struct {
  int starts;
  double tol;
  uint64_t seed;
} cohmem_seesaw_options;

COHMEM_API void cohmem_seesaw_options_default(cohmem_seesaw_options* opts);

typedef struct {
  double lambda;
  double q_zero_lb;
  int heuristic;
  int runs;
  int converged_runs;
} cohmem_highdim_report;

/* `v` is used only with COHMEM_GUESS_GIVEN. */
COHMEM_API cohmem_status cohmem_bound_highdim(const cohmem_channel* ch, cohmem_guess guess, const cohmem_unitary* v,
                                              const cohmem_seesaw_options* opts, cohmem_highdim_report* out);

#ifdef __cplusplus
}
#endif

#endif  /* COHMEM_COHMEM_H_ */
