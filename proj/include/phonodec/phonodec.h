// Copyright 2026 The phonodec Authors
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

/* C interface to the phonodec simulator.
 *
 * Objects are opaque handles released with their matching *_free call.
 * Every function returns a pdc_status; on failure pdc_last_error() gives a
 * message for the calling thread. Units: meV, nm, ps, K. */
#ifndef PHONODEC_PHONODEC_H
#define PHONODEC_PHONODEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(PHONODEC_BUILDING_LIBRARY)
#define PDC_API __attribute__((visibility("default")))
#else
#define PDC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdc_status {
  PDC_OK = 0,
  PDC_ERR_ARGUMENT = 1,
  PDC_ERR_CONFIG = 2,
  PDC_ERR_NUMERICAL = 3,
  PDC_ERR_IO = 4,
  PDC_ERR_PRECONDITION = 5,
  PDC_ERR_INTERNAL = 6
} pdc_status;

typedef enum pdc_process { PDC_ABSORPTION = 0, PDC_EMISSION = 1 } pdc_process;

typedef struct pdc_config pdc_config;
typedef struct pdc_correlations pdc_correlations;

PDC_API const char* pdc_version(void);
/* Message of the last failed call on this thread; "" if none. */
PDC_API const char* pdc_last_error(void);

/* Configuration. `experiment` may be NULL when the document carries an
 * "experiment" key; otherwise it fills a missing key and must match a
 * present one. */
PDC_API pdc_status pdc_config_load(const char* path, const char* experiment, pdc_config** out);
PDC_API pdc_status pdc_config_parse(const char* json_text, const char* experiment, pdc_config** out);
PDC_API pdc_status pdc_config_default(const char* experiment, pdc_config** out);
PDC_API void pdc_config_free(pdc_config* cfg);
PDC_API pdc_status pdc_config_set_output_dir(pdc_config* cfg, const char* dir);
PDC_API pdc_status pdc_config_set_seed(pdc_config* cfg, uint64_t seed);
PDC_API pdc_status pdc_config_set_threads(pdc_config* cfg, unsigned threads);
PDC_API pdc_status pdc_config_set_tolerance(pdc_config* cfg, double rel_tol);
/* Writes the materialised config as JSON. `*needed` receives the size
 * including the terminator; `buf` may be NULL to query it. */
PDC_API pdc_status pdc_config_to_json(const pdc_config* cfg, char* buf, size_t size, size_t* needed);

/* Runs the configured experiment and writes its outputs. PDC_ERR_NUMERICAL
 * is returned when any part failed; other parts are still written. */
PDC_API pdc_status pdc_run(const pdc_config* cfg);

/* Correlation matrices for the geometry in `cfg`. */
PDC_API pdc_status pdc_correlations_compute(const pdc_config* cfg, pdc_correlations** out);
PDC_API pdc_status pdc_correlations_load(const char* path, pdc_correlations** out);
PDC_API pdc_status pdc_correlations_save(const pdc_correlations* c, const char* path);
PDC_API void pdc_correlations_free(pdc_correlations* c);
PDC_API pdc_status pdc_correlations_size(const pdc_correlations* c, int* n_dots);
/* Entry (i, j), zero based, as re/im in meV. `which`: 'G' for Gamma, 'D' for Delta. */
PDC_API pdc_status pdc_correlations_get(const pdc_correlations* c, char which, pdc_process process,
                                        int i, int j, double* re, double* im);

/* Scalar observables. */
PDC_API pdc_status pdc_single_dot_rate(double splitting, double well_width, double temperature,
                                       double* rate_per_ps);
/* tau1^-1 (1/ps) of the product of singlets on pairs (0,1), (2,3), ... */
PDC_API pdc_status pdc_singlet_tau1_inverse(const pdc_correlations* c, double* rate_per_ps);
PDC_API pdc_status pdc_correlation_factor(const pdc_correlations* c, pdc_process process, double* fd);

#ifdef __cplusplus
}
#endif

#endif /* PHONODEC_PHONODEC_H */
