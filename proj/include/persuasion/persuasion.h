/* Copyright 2026 The Persuasion Lab Authors
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

/* C interface to the persuasion library.
 *
 * Objects are opaque handles released with the matching *_free function
 * (passing NULL is a no-op). Every other call returns a pl_status; on failure
 * pl_last_error() describes the problem for the calling thread until its next
 * failing call. Strings returned through char** are owned by the caller and
 * released with pl_string_free.
 *
 * Reports are JSON (or CSV where a format argument is taken). Randomized
 * commands are deterministic in their seed; worker threads are capped by the
 * PERSUASION_LAB_THREADS environment variable.
 */

#ifndef PERSUASION_PERSUASION_H_
#define PERSUASION_PERSUASION_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PL_BUILDING_LIBRARY)
#    define PL_API __declspec(dllexport)
#  else
#    define PL_API __declspec(dllimport)
#  endif
#else
#  define PL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pl_game pl_game;
typedef struct pl_experiment pl_experiment;
typedef struct pl_strategy pl_strategy;

typedef enum pl_status {
  PL_OK = 0,
  PL_ERR_INVALID_ARGUMENT = 1,  /* malformed data; the message names the field */
  PL_ERR_DIMENSION_MISMATCH = 2,
  PL_ERR_PRECONDITION = 3,
  PL_ERR_LP_FAILURE = 4,
  PL_ERR_THEOREM_VIOLATION = 5,
  PL_ERR_INTERNAL = 6,
  PL_ERR_NULL_ARGUMENT = 7
} pl_status;

typedef enum pl_format { PL_FORMAT_JSON = 0, PL_FORMAT_CSV = 1 } pl_format;

PL_API const char* pl_status_name(pl_status status);
PL_API const char* pl_last_error(void);
/* Process exit status for a call result: 0 ok, 2 data, 3 theorem-violation, 4 internal. */
PL_API int pl_exit_code(pl_status status);
PL_API void pl_string_free(char* s);

PL_API pl_status pl_game_load(const char* path, pl_game** out);
PL_API pl_status pl_game_from_json(const char* json, pl_game** out);
PL_API pl_status pl_game_to_json(const pl_game* game, char** out);
PL_API pl_status pl_game_dims(const pl_game* game, size_t* num_states, size_t* num_actions);
PL_API void pl_game_free(pl_game* game);

/* Experiments are read against a game, whose actions are the default messages. */
PL_API pl_status pl_experiment_load(const pl_game* game, const char* path, pl_experiment** out);
PL_API pl_status pl_experiment_from_json(const pl_game* game, const char* json,
                                         pl_experiment** out);
PL_API void pl_experiment_free(pl_experiment* experiment);

PL_API pl_status pl_strategy_load(const char* path, pl_strategy** out);
PL_API pl_status pl_strategy_from_json(const char* json, pl_strategy** out);
PL_API void pl_strategy_free(pl_strategy* strategy);

/* Sender's optimal statistical value; with an experiment (may be NULL) also
 * its ambiguous value and the gain over the statistical optimum. */
PL_API pl_status pl_solve(const pl_game* game, double resolution, const pl_experiment* experiment,
                          char** report);

/* Obedience certificates, K*, and the receiver's best response. The
 * experiment must be canonical (PL_ERR_PRECONDITION otherwise). */
PL_API pl_status pl_check_obedience(const pl_game* game, const pl_experiment* experiment,
                                    char** report);

/* Folds a receiver strategy into the experiment; the report is an experiment file. */
PL_API pl_status pl_canonicalize(const pl_game* game, const pl_experiment* experiment,
                                 const pl_strategy* strategy, char** report);

/* Samples `budget` obedient ambiguous experiments for a 2x2 game and checks
 * the sigma-hat construction on each. `violations` (may be NULL) receives the
 * count of failed instances; the call itself still returns PL_OK. */
PL_API pl_status pl_verify_theorem(const pl_game* game, uint64_t seed, uint64_t budget,
                                   pl_format format, char** report, uint64_t* violations);

/* Statistical optimum against `budget` sampled obedient ambiguous experiments. */
PL_API pl_status pl_search_gain(const pl_game* game, uint64_t seed, uint64_t budget,
                                double resolution, pl_format format, char** report);

#ifdef __cplusplus
}
#endif

#endif /* PERSUASION_PERSUASION_H_ */
