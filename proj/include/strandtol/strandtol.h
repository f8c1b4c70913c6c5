/*
 * Copyright 2026 The strandtol Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the strandtol library.
 *
 * Objects are opaque handles released with their matching *_free function.
 * Every call returns an st_status; on failure st_last_error() describes the
 * problem for the calling thread. Reports come back as JSON strings owned by
 * the caller and released with st_free_string.
 */

#ifndef STRANDTOL_H
#define STRANDTOL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(STRANDTOL_BUILDING_LIBRARY)
#define ST_API __attribute__((visibility("default")))
#else
#define ST_API
#endif

typedef enum st_status {
    ST_OK = 0,
    /* Bad argument value: unknown procedure, gate, out-of-range number. */
    ST_ERR_ARGUMENT = 1,
    /* Malformed JSON, model text or expression. */
    ST_ERR_PARSE = 2,
    /* Circuit lifecycle violation. */
    ST_ERR_CIRCUIT = 3,
    /* Invalid error model. */
    ST_ERR_MODEL = 4,
    /* Numeric procedure failed. */
    ST_ERR_COMPUTE = 5,
    ST_ERR_IO = 6,
    ST_ERR_INTERNAL = 7
} st_status;

typedef struct st_model st_model;
typedef struct st_circuit st_circuit;

ST_API const char *st_version(void);
/* Message of the last failed call on this thread, or "" if none. */
ST_API const char *st_last_error(void);
ST_API void st_free_string(char *s);

/* Error models. */
ST_API st_status st_model_builtin(int id, st_model **out);
/* "1".."4" selects a builtin; anything else is read as a model file. */
ST_API st_status st_model_load(const char *spec, st_model **out);
ST_API st_status st_model_parse(const char *text, st_model **out);
/* Rational literals such as "1/15". */
ST_API st_status st_model_depolarizing(const char *one_q, const char *two_q, const char *meas, st_model **out);
ST_API st_status st_model_to_text(const st_model *m, char **out);
ST_API st_status st_model_to_json(const st_model *m, char **out);
ST_API void st_model_free(st_model *m);

/* Strand circuits. */
ST_API st_status st_circuit_build(const char *proc, const char *gate, st_circuit **out);
ST_API st_status st_circuit_from_json(const char *text, st_circuit **out);
ST_API st_status st_circuit_to_json(const st_circuit *c, char **out);
/* Symbolic analysis of a circuit; use_min selects min instead of max. */
ST_API st_status st_circuit_analyze(const st_circuit *c, int maxdegree, int use_min, char **out);
/* Monte-Carlo estimates next to the symbolic values at scale p. */
ST_API st_status st_circuit_mc(const st_circuit *c, const st_model *m, double p, uint64_t trials, uint64_t seed,
                               char **out);
ST_API void st_circuit_free(st_circuit *c);

/* Built-in procedure reports. */
ST_API st_status st_list_procedures(char **out);
ST_API st_status st_analyze(const char *proc, const char *gate, int maxdegree, char **out);
ST_API st_status st_checkpoint_list(const char *proc, const char *gate, const st_model *m, char **out);
ST_API st_status st_threshold_infinite(const char *proc, const st_model *m, double tau, int second_order,
                                       char **out);
ST_API st_status st_threshold_finite(const char *proc, const st_model *m, int n, int t, int second_order,
                                     char **out);

/* Scalar helpers. */
ST_API st_status st_e_pass(double p_L, int n, int t, double *out);
ST_API st_status st_e_fail(double p_L, int n, int t, double *out);
ST_API st_status st_second_order_bound(int g1, int g2, double p_r, double *first_order, double *bound,
                                       double *ratio);

/* Channels. Kraus JSON is a list of 2x2 matrices with [re, im] entries, or
 * {"channels": [...]} for a composed sequence. */
ST_API st_status st_channel_associate(const char *kraus_json, int raw_trace, char **out);
ST_API st_status st_channel_discrepancy_json(const char *kraus_json, char **out);
/* Sequence of count rotations about X by theta. */
ST_API st_status st_channel_discrepancy_rotation(double theta, int count, char **out);
ST_API st_status st_channel_random_signs(double theta, int count, uint64_t sequences, uint64_t seed, char **out);

#ifdef __cplusplus
}
#endif

#endif
