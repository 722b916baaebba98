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

/* Exercises the C interface from C. Exits nonzero on the first failure. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "cohmem/cohmem.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static void test_quality(void) {
  cohmem_channel* ch = NULL;
  cohmem_quality_options o;
  cohmem_quality_report r;
  EXPECT(cohmem_channel_from_builtin("depolarizing:0.5", &ch) == COHMEM_OK);
  cohmem_quality_options_default(&o);
  EXPECT(cohmem_quality(ch, &o, &r) == COHMEM_OK);
  EXPECT(fabs(r.q_minus - 0.5) < 1e-3);
  EXPECT(fabs(r.q_zero - 0.5) < 1e-3);
  EXPECT(fabs(r.q_plus - 0.5) < 1e-3);
  EXPECT(r.unital == 1);
  /* Q- = 0.5 exceeds 1/sqrt(5); Q0 and Q+ stay below 1/sqrt(2). */
  EXPECT(r.certified_non_mp == 1);
  EXPECT(strstr(r.reasons, "Q-") != NULL);
  EXPECT(strstr(r.reasons, "Q+") == NULL);
  cohmem_channel_free(ch);

  /* Entanglement breaking; all three measures (0.3) stay below the unital thresholds. */
  EXPECT(cohmem_channel_from_builtin("depolarizing:0.3", &ch) == COHMEM_OK);
  o.assume_unital = 1;
  EXPECT(cohmem_quality(ch, &o, &r) == COHMEM_OK);
  EXPECT(r.certified_non_mp == 0);
  EXPECT(r.measure_and_prepare == 1);
  cohmem_channel_free(ch);

  EXPECT(cohmem_channel_from_builtin("amplitude-damping:0.19", &ch) == COHMEM_OK);
  o.assume_unital = 0;
  EXPECT(cohmem_quality(ch, &o, &r) == COHMEM_OK);
  EXPECT(fabs(r.q_minus - 0.9) < 1e-3);
  EXPECT(r.certified_non_mp == 1);
  cohmem_channel_free(ch);
}

static void test_errors(void) {
  cohmem_channel* ch = NULL;
  double lambda[9] = {1, 0, 0, 0, 1, 0, 0, 0, -1};
  double kappa[3] = {0, 0, 0};
  cohmem_quality_options o;
  cohmem_quality_report r;
  int dim = 0;

  EXPECT(cohmem_channel_from_builtin("teleporter:1", &ch) != COHMEM_OK);
  EXPECT(ch == NULL);
  EXPECT(strlen(cohmem_last_error()) > 0);
  EXPECT(cohmem_channel_from_json("{\"repr\": ", &ch) == COHMEM_ERR_PARSE);
  EXPECT(strstr(cohmem_last_error(), "line 1") != NULL);
  EXPECT(cohmem_channel_from_file("/nonexistent.json", &ch) == COHMEM_ERR_IO);
  EXPECT(cohmem_channel_from_builtin("identity", NULL) == COHMEM_ERR_ARGUMENT);

  /* Transpose map: not completely positive. */
  EXPECT(cohmem_channel_from_affine(lambda, kappa, &ch) == COHMEM_OK);
  EXPECT(cohmem_channel_dim(ch, &dim) == COHMEM_OK && dim == 2);
  cohmem_quality_options_default(&o);
  EXPECT(cohmem_quality(ch, &o, &r) == COHMEM_ERR_VALIDATION);
  cohmem_channel_free(ch);
  cohmem_channel_free(NULL);
  EXPECT(strcmp(cohmem_status_name(COHMEM_ERR_NUMERIC), "") != 0);
}

static void test_json(void) {
  cohmem_channel* ch = NULL;
  cohmem_channel* back = NULL;
  char* json = NULL;
  double l1[9], k1[3], l2[9], k2[3];
  int i;
  EXPECT(cohmem_channel_from_builtin("amplitude-damping:0.3", &ch) == COHMEM_OK);
  EXPECT(cohmem_channel_to_json(ch, &json) == COHMEM_OK);
  EXPECT(cohmem_channel_from_json(json, &back) == COHMEM_OK);
  EXPECT(cohmem_channel_affine(ch, l1, k1) == COHMEM_OK);
  EXPECT(cohmem_channel_affine(back, l2, k2) == COHMEM_OK);
  for (i = 0; i < 9; ++i) EXPECT(l1[i] == l2[i]);
  for (i = 0; i < 3; ++i) EXPECT(k1[i] == k2[i]);
  cohmem_string_free(json);
  cohmem_channel_free(ch);
  cohmem_channel_free(back);
}

static void test_certify(void) {
  cohmem_dataset* d = NULL;
  cohmem_certify_options o;
  cohmem_certify_report r;
  char* csv = NULL;
  cohmem_certify_options_default(&o);
  o.starts = 8;
  EXPECT(cohmem_dataset_uniform(0.5, &d) == COHMEM_OK);
  EXPECT(cohmem_certify(d, &o, &r) == COHMEM_OK);
  EXPECT(r.lower_bound < 1e-6);
  EXPECT(r.certified_non_mp == 0);
  cohmem_dataset_free(d);
  EXPECT(cohmem_dataset_uniform(1.5, &d) == COHMEM_ERR_VALIDATION);
  EXPECT(cohmem_dataset_from_json("{\"c\": 0.9, \"x\": 1}", &d) == COHMEM_ERR_PARSE);

  EXPECT(cohmem_sweep_csv(0.8, 1.0, 0, &o, &csv) == COHMEM_OK);
  EXPECT(strcmp(csv, "c,lower_bound,converged\n") == 0);
  cohmem_string_free(csv);
}

static void test_sinkhorn(void) {
  cohmem_unitary* u = NULL;
  cohmem_sinkhorn_report r;
  int dim = 0;
  EXPECT(cohmem_unitary_from_spec("hadamard", 0, &u) == COHMEM_OK);
  EXPECT(cohmem_sinkhorn(u, 1e-12, &r) == COHMEM_OK);
  EXPECT(r.dim == 2);
  EXPECT(r.residual <= 1e-10);
  EXPECT(fabs(r.witness_coherence - 1.0) < 1e-6);
  EXPECT(r.z1_re[0] == 1.0 && r.z1_im[0] == 0.0);
  cohmem_unitary_free(u);

  EXPECT(cohmem_unitary_from_spec("random:3", 42, &u) == COHMEM_OK);
  EXPECT(cohmem_unitary_dim(u, &dim) == COHMEM_OK && dim == 3);
  EXPECT(cohmem_sinkhorn(u, 1e-12, &r) == COHMEM_OK);
  EXPECT(r.residual <= 1e-8);
  cohmem_unitary_free(u);
  EXPECT(cohmem_unitary_from_json("{\"dim\": 2, \"unitary\": [[[1,0],[1,0]],[[0,0],[1,0]]]}", &u) ==
         COHMEM_ERR_VALIDATION);
}

static void test_highdim(void) {
  cohmem_channel* ch = NULL;
  cohmem_seesaw_options o;
  cohmem_highdim_report r;
  EXPECT(cohmem_channel_from_builtin("depolarizing:0.6", &ch) == COHMEM_OK);
  cohmem_seesaw_options_default(&o);
  EXPECT(cohmem_bound_highdim(ch, COHMEM_GUESS_IDENTITY, NULL, &o, &r) == COHMEM_OK);
  EXPECT(fabs(r.lambda + 0.2) < 1e-6);
  EXPECT(fabs(r.q_zero_lb - 0.6) < 1e-6);
  EXPECT(r.runs == o.starts);
  EXPECT(cohmem_bound_highdim(ch, COHMEM_GUESS_GIVEN, NULL, &o, &r) == COHMEM_ERR_ARGUMENT);
  cohmem_channel_free(ch);
}

int main(void) {
  test_quality();
  test_errors();
  test_json();
  test_certify();
  test_sinkhorn();
  test_highdim();
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("C API: all checks passed (%s)\n", cohmem_version());
  return failures ? 1 : 0;
}
