// Copyright 2026 The dmqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the key-rate library. All functions are thread-safe with
 * respect to distinct handles; error text is kept per thread. */
#ifndef DMQKD_H_
#define DMQKD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DMQKD_BUILDING_LIBRARY)
#define DMQKD_API __attribute__((visibility("default")))
#else
#define DMQKD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dmqkd_status {
  DMQKD_OK = 0,
  DMQKD_ERR_INVALID_ARGUMENT = 1,
  DMQKD_ERR_CONFIG = 2,
  DMQKD_ERR_NUMERICAL = 3,
  DMQKD_ERR_IO = 4,
  DMQKD_ERR_INTERNAL = 5
} dmqkd_status;

typedef struct dmqkd_config dmqkd_config;
typedef struct dmqkd_sweep_result dmqkd_sweep_result;

DMQKD_API const char* dmqkd_version(void);
/* Message of the last failing call on this thread, "" if none. */
DMQKD_API const char* dmqkd_last_error(void);
/* Config line of the last config error on this thread, 0 if unknown. */
DMQKD_API int dmqkd_last_error_line(void);
DMQKD_API const char* dmqkd_status_string(dmqkd_status s);

DMQKD_API dmqkd_status dmqkd_config_load_file(const char* path, dmqkd_config** out);
DMQKD_API dmqkd_status dmqkd_config_load_string(const char* text, dmqkd_config** out);
DMQKD_API void dmqkd_config_free(dmqkd_config* cfg);

DMQKD_API dmqkd_status dmqkd_config_set_threads(dmqkd_config* cfg, int threads);
DMQKD_API dmqkd_status dmqkd_config_set_seed(dmqkd_config* cfg, uint64_t seed);
DMQKD_API dmqkd_status dmqkd_config_set_tol(dmqkd_config* cfg, double tol);
/* "asymptotic", "finite" or "both". */
DMQKD_API dmqkd_status dmqkd_config_set_rate_mode(dmqkd_config* cfg, const char* mode);
/* Borrowed pointer, valid until the handle is freed; "" when unset. */
DMQKD_API const char* dmqkd_config_output_path(const dmqkd_config* cfg);

/* Succeeds even when individual points fail; inspect the rows. */
DMQKD_API dmqkd_status dmqkd_sweep_run(const dmqkd_config* cfg, dmqkd_sweep_result** out);
DMQKD_API void dmqkd_sweep_free(dmqkd_sweep_result* res);
DMQKD_API size_t dmqkd_sweep_rows(const dmqkd_sweep_result* res);
DMQKD_API int dmqkd_sweep_any_numerical_failure(const dmqkd_sweep_result* res);
DMQKD_API dmqkd_status dmqkd_sweep_row_rate(const dmqkd_sweep_result* res, size_t row,
                                            double* rate_bits);
/* "positive", "nonpositive" or "aborted". */
DMQKD_API dmqkd_status dmqkd_sweep_row_status(const dmqkd_sweep_result* res, size_t row,
                                              const char** status);
/* Caller frees *out with dmqkd_string_free. */
DMQKD_API dmqkd_status dmqkd_sweep_csv(const dmqkd_sweep_result* res, int with_runtime,
                                       char** out);
DMQKD_API dmqkd_status dmqkd_sweep_summary(const dmqkd_sweep_result* res, char** out);
DMQKD_API void dmqkd_string_free(char* s);

/* Monte Carlo round records "i,x,j,k,S" for the first configured range. */
DMQKD_API dmqkd_status dmqkd_records_write(const dmqkd_config* cfg, double loss_db,
                                           uint64_t rounds, const char* path);

/* Writes <prefix>_gammaB.sdp and <prefix>_gammaAB.sdp for one point of the
 * first configured range. sdp_mode is "truncated" or "finite-dim", rate_mode
 * "asymptotic" or "finite"; dim 0 picks floor(2R^2)+1. */
DMQKD_API dmqkd_status dmqkd_dump_sdp(const dmqkd_config* cfg, double loss_db,
                                      const char* rate_mode, double n, const char* sdp_mode,
                                      int dim, const char* prefix);

/* Solves a dumped problem; any output pointer may be NULL. */
DMQKD_API dmqkd_status dmqkd_solve_sdp_file(const char* path, double tol, double* value,
                                            double* bound, double* gap);

#ifdef __cplusplus
}
#endif

#endif /* DMQKD_H_ */
