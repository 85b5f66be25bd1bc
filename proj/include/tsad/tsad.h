/*
 * Copyright 2026 The tsad Authors.
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


/* C interface to the tsad anomaly-detection library.
 *
 * Objects are opaque handles released with their matching *_destroy call.
 * Every function that can fail returns a tsad_status; on failure a message is
 * available from tsad_last_error() on the same thread. Strings returned as
 * `char*` are owned by the caller and freed with tsad_string_free(). */

#ifndef TSAD_TSAD_H
#define TSAD_TSAD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TSAD_BUILDING_LIBRARY)
#    define TSAD_API __declspec(dllexport)
#  else
#    define TSAD_API __declspec(dllimport)
#  endif
#else
#  define TSAD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsad_status {
  TSAD_OK = 0,
  TSAD_INVALID_ARGUMENT = 1,
  TSAD_SERIES_TOO_SHORT = 2,
  TSAD_PARSE_ERROR = 3,
  TSAD_MISSING_COLUMN = 4,
  TSAD_LABEL_FILE_MISSING_ENTRY = 5,
  TSAD_INVALID_SPEC = 6,
  TSAD_CONSTANT_SERIES = 7,
  TSAD_INVALID_PERIOD = 8,
  TSAD_SINGULAR_DESIGN = 9,
  TSAD_ORDER_TOO_LARGE = 10,
  TSAD_INVALID_ORDER = 11,
  TSAD_NON_CONVERGENCE = 12,
  TSAD_PERIOD_TOO_LONG = 13,
  TSAD_TOO_FEW_WINDOWS = 14,
  TSAD_NO_CORE_POINTS = 15,
  TSAD_DIMENSION_MISMATCH = 16,
  TSAD_NUMERICAL_DIVERGENCE = 17,
  TSAD_DEGENERATE_LABELS = 18,
  TSAD_NAIVE_ZERO = 19,
  TSAD_UNKNOWN_DETECTOR = 20,
  TSAD_IO_ERROR = 21,
  TSAD_INTERNAL = 22
} tsad_status;

typedef struct tsad_series tsad_series;
typedef struct tsad_detector tsad_detector;
typedef struct tsad_scores tsad_scores;
typedef struct tsad_run_config tsad_run_config;
typedef struct tsad_benchmark tsad_benchmark;

TSAD_API const char* tsad_version(void);
/* Message of the last failed call on this thread; "" if none. */
TSAD_API const char* tsad_last_error(void);
TSAD_API const char* tsad_status_string(tsad_status status);
TSAD_API void tsad_string_free(char* s);

/* ---- series ---------------------------------------------------------- */

/* `labels` may be NULL. */
TSAD_API tsad_status tsad_series_create(const double* values, const uint8_t* labels,
                                        size_t length, const char* series_id,
                                        tsad_series** out);
TSAD_API tsad_status tsad_series_load_yahoo(const char* path, tsad_series** out);
/* `label_key` may be NULL to derive it from the data path. */
TSAD_API tsad_status tsad_series_load_nab(const char* data_path, const char* labels_path,
                                          const char* label_key, tsad_series** out);
/* Synthetic series from a key=value spec (length, base, anomaly_rate, ...). */
TSAD_API tsad_status tsad_series_generate(const char* spec_text, tsad_series** out);
TSAD_API tsad_status tsad_series_write_csv(const tsad_series* series, const char* path);
TSAD_API size_t tsad_series_length(const tsad_series* series);
/* Borrowed pointers valid until the series is destroyed. labels is NULL when
 * the series is unlabeled. */
TSAD_API const double* tsad_series_values(const tsad_series* series);
TSAD_API const uint8_t* tsad_series_labels(const tsad_series* series);
TSAD_API void tsad_series_destroy(tsad_series* series);

/* ---- detectors ------------------------------------------------------- */

TSAD_API size_t tsad_detector_count(void);
/* Static string, or NULL when index is out of range. */
TSAD_API const char* tsad_detector_name(size_t index);
/* Catalog as JSON: [{name, family, summary, hyperparameters: [...]}]. */
TSAD_API tsad_status tsad_catalog_json(char** out);

/* `params` is "key=value;key=value" or NULL. window_width 0 means 30. */
TSAD_API tsad_status tsad_detector_fit(const char* name, const tsad_series* train,
                                       size_t window_width, const char* params,
                                       uint64_t seed, tsad_detector** out);
TSAD_API tsad_status tsad_detector_score(const tsad_detector* detector,
                                         const tsad_series* test, tsad_scores** out);
TSAD_API void tsad_detector_destroy(tsad_detector* detector);

TSAD_API size_t tsad_scores_length(const tsad_scores* scores);
TSAD_API const double* tsad_scores_values(const tsad_scores* scores);
TSAD_API const size_t* tsad_scores_indices(const tsad_scores* scores);
TSAD_API void tsad_scores_destroy(tsad_scores* scores);

/* ---- metrics --------------------------------------------------------- */

TSAD_API tsad_status tsad_roc_auc(const double* scores, const uint8_t* labels, size_t n,
                                  double* auc);
TSAD_API tsad_status tsad_best_f1(const double* scores, const uint8_t* labels, size_t n,
                                  double* f1, double* threshold);

/* ---- benchmark ------------------------------------------------------- */

TSAD_API tsad_status tsad_run_config_create(tsad_run_config** out);
/* Same keys as the config file, e.g. "dataset", "detector", "seed". */
TSAD_API tsad_status tsad_run_config_set(tsad_run_config* config, const char* key,
                                         const char* value);
TSAD_API tsad_status tsad_run_config_load_file(tsad_run_config* config, const char* path);
/* Output directory configured for the run (borrowed). */
TSAD_API const char* tsad_run_config_output_dir(const tsad_run_config* config);
TSAD_API void tsad_run_config_destroy(tsad_run_config* config);

/* Optional callback after each row: (dataset, series, detector, status). */
typedef void (*tsad_progress_fn)(const char* dataset, const char* series, const char* detector,
                                 const char* status, void* user);

TSAD_API tsad_status tsad_benchmark_run(const tsad_run_config* config,
                                        tsad_progress_fn progress, void* user,
                                        tsad_benchmark** out);
TSAD_API size_t tsad_benchmark_row_count(const tsad_benchmark* bench);
TSAD_API size_t tsad_benchmark_ok_count(const tsad_benchmark* bench);
/* Writes results.csv, summary.json and roc/ under `output_dir`. */
TSAD_API tsad_status tsad_benchmark_write(const tsad_benchmark* bench, const char* output_dir);
TSAD_API tsad_status tsad_benchmark_results_csv(const tsad_benchmark* bench, int with_timing,
                                                char** out);
TSAD_API tsad_status tsad_benchmark_summary_json(const tsad_benchmark* bench, char** out);
TSAD_API void tsad_benchmark_destroy(tsad_benchmark* bench);

#ifdef __cplusplus
}
#endif

#endif /* TSAD_TSAD_H */
