// Copyright 2026 The unsubx Authors
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
#ifndef UNSUBX_H_
#define UNSUBX_H_

/* C interface to the unsubx analysis core.
 *
 * A package handle owns one parsed export together with its decisions,
 * weights and the active filter. Every call returns an unsubx_status; on
 * failure unsubx_last_error() describes the problem for the calling thread.
 * Strings returned through out-parameters are heap-allocated and must be
 * released with unsubx_string_free(). Handles are not thread-safe; use one
 * handle per thread or serialize access. */

#include <stddef.h>

#if defined(UNSUBX_BUILDING_LIBRARY)
#define UNSUBX_API __attribute__((visibility("default")))
#else
#define UNSUBX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct unsubx_package unsubx_package;

typedef enum unsubx_status {
  UNSUBX_OK = 0,
  UNSUBX_E_INVALID_ARGUMENT = 1,
  UNSUBX_E_IO = 2,
  UNSUBX_E_EMPTY_FILE = 3,
  UNSUBX_E_MISSING_COLUMN = 4,
  UNSUBX_E_DUPLICATE_HEADER = 5,
  UNSUBX_E_ROW_PARSE = 6,
  UNSUBX_E_UNKNOWN_KEY = 7,
  UNSUBX_E_AMBIGUOUS = 8,
  UNSUBX_E_INVALID_RANGE = 9,
  UNSUBX_E_EMPTY_PACKAGE = 10,
  UNSUBX_E_UNKNOWN_CHART = 11,
  UNSUBX_E_DEGENERATE_DENOMINATOR = 12,
  UNSUBX_E_ZERO_PACKAGE_USAGE = 13,
  UNSUBX_E_INTERNAL = 99
} unsubx_status;

typedef enum unsubx_usage_source {
  UNSUBX_USAGE_EXPORTED = 0,
  UNSUBX_USAGE_RECOMPUTED = 1
} unsubx_usage_source;

/* Library version, e.g. "1.0.0". */
UNSUBX_API const char* unsubx_version(void);

/* Message for the last failed call on this thread; "" if none. Valid until
 * the next call on the same thread. */
UNSUBX_API const char* unsubx_last_error(void);

/* Same failure as a JSON object {"error", "message", ...}; "{}" if none. */
UNSUBX_API const char* unsubx_last_error_json(void);

/* Symbolic name of a status code, e.g. "UNSUBX_E_ROW_PARSE". */
UNSUBX_API const char* unsubx_status_name(unsubx_status status);

UNSUBX_API unsubx_status unsubx_open_file(const char* path, unsubx_package** out);
UNSUBX_API unsubx_status unsubx_open_buffer(const char* data, size_t len, unsubx_package** out);
/* The embedded 431-journal demo package. */
UNSUBX_API unsubx_status unsubx_open_sample(unsubx_package** out);
UNSUBX_API void unsubx_free(unsubx_package* pkg);

/* Number of journals in the package, ignoring the filter. */
UNSUBX_API size_t unsubx_size(const unsubx_package* pkg);
/* Number of journals passing the active filter. */
UNSUBX_API size_t unsubx_view_size(const unsubx_package* pkg);

/* Recomputes usage under explicit weights; implies UNSUBX_USAGE_RECOMPUTED. */
UNSUBX_API unsubx_status unsubx_set_weights(unsubx_package* pkg, double download, double citation,
                                            double authorship);
/* Ratio weights derived from the package totals; implies recomputed usage. */
UNSUBX_API unsubx_status unsubx_set_dynamic_weights(unsubx_package* pkg);
UNSUBX_API unsubx_status unsubx_set_usage_source(unsubx_package* pkg, unsubx_usage_source source);

/* Resolves a row key, or failing that a title matched exactly ignoring
 * case. UNSUBX_E_AMBIGUOUS when several titles match (the error message
 * lists the candidates), UNSUBX_E_UNKNOWN_KEY when none does. */
UNSUBX_API unsubx_status unsubx_resolve(const unsubx_package* pkg, const char* key_or_title, char** key_out);

/* Sets one decision. `status` is TRUE, FALSE, MAYBE or BLANK (any case);
 * the empty string also means BLANK. */
UNSUBX_API unsubx_status unsubx_set_status(unsubx_package* pkg, const char* key, const char* status);

/* Replaces the active filter with one parsed from a query string such as
 * "price_min=100&usage_max=5000&statuses=TRUE,MAYBE". NULL or "" clears it. */
UNSUBX_API unsubx_status unsubx_set_filter(unsubx_package* pkg, const char* query);

/* {"package": <summary>, "view": <summary>} */
UNSUBX_API unsubx_status unsubx_summary_json(const unsubx_package* pkg, char** out);
/* Package totals, weights and usage source. */
UNSUBX_API unsubx_status unsubx_metrics_json(const unsubx_package* pkg, char** out);
/* Records in the active view with derived metrics. */
UNSUBX_API unsubx_status unsubx_journals_json(const unsubx_package* pkg, char** out);
/* Validation warnings gathered at load time. */
UNSUBX_API unsubx_status unsubx_validation_json(const unsubx_package* pkg, char** out);
/* Chart document over the active view; `chart_id` as in the catalog. */
UNSUBX_API unsubx_status unsubx_chart_json(const unsubx_package* pkg, const char* chart_id, char** out);
UNSUBX_API unsubx_status unsubx_catalog_json(char** out);

/* CSV bytes of the package with current decisions, plus a random
 * 12-character file name. `data` is not NUL-terminated in general; use
 * `len`. Either name pointer may be NULL when not wanted. */
UNSUBX_API unsubx_status unsubx_export(const unsubx_package* pkg, char** filename, char** data, size_t* len);

UNSUBX_API void unsubx_string_free(char* s);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* UNSUBX_H_ */
