/*
 * Copyright 2026 The qnoc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * qnoc - cycle-level simulator of a multi-initiator on-chip interconnect
 * sharing one memory-like target, with epoch-based arbitration and
 * credit-counter bandwidth enforcement, plus fixed-priority, round-robin,
 * TDMA and fixed-weight baselines.
 *
 * Usage pattern:
 *
 *   qnoc_config* cfg = NULL;
 *   if (qnoc_config_preset("qos-low", &cfg) != QNOC_OK) { ... }
 *   qnoc_config_set(cfg, "sim_cycles", "2000000");
 *   qnoc_report* rep = NULL;
 *   if (qnoc_run(cfg, &rep) == QNOC_OK) {
 *     char* csv = NULL;
 *     qnoc_report_summary_csv(rep, &csv);
 *     ...
 *     qnoc_string_free(csv);
 *     qnoc_report_free(rep);
 *   }
 *   qnoc_config_free(cfg);
 *
 * All functions returning qnoc_status leave a human-readable reason in
 * qnoc_last_error() (thread local) when they fail. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * qnoc_string_free(). Handles are released with their matching _free call;
 * every function tolerates NULL handles by failing with QNOC_ERROR_ARGUMENT
 * rather than crashing.
 */

#ifndef QNOC_QNOC_H
#define QNOC_QNOC_H

#include <stdint.h>

#if defined(_WIN32)
#define QNOC_API __declspec(dllexport)
#else
#define QNOC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qnoc_config qnoc_config;
typedef struct qnoc_report qnoc_report;

/* Aligned with the CLI exit codes: 2 marks a rejected configuration, 3 a
 * failure while running one. 1 covers misuse of the API itself. */
typedef enum qnoc_status {
  QNOC_OK = 0,
  QNOC_ERROR_ARGUMENT = 1,
  QNOC_ERROR_CONFIG = 2,
  QNOC_ERROR_RUNTIME = 3
} qnoc_status;

QNOC_API const char* qnoc_version(void);

/* Reason for the most recent failure on this thread; never NULL. */
QNOC_API const char* qnoc_last_error(void);

/* ---- Canned scenarios ---- */

QNOC_API int qnoc_preset_count(void);
/* NULL when index is out of range. The returned strings are static. */
QNOC_API const char* qnoc_preset_name(int index);
QNOC_API const char* qnoc_preset_description(int index);

/* ---- Configurations ---- */

/* An empty scenario; every aspect still to be filled in via _set. */
QNOC_API qnoc_status qnoc_config_create(qnoc_config** out);
QNOC_API qnoc_status qnoc_config_preset(const char* name, qnoc_config** out);
/* Parse the flat "key = value" text form (one pair per line, '#' comments). */
QNOC_API qnoc_status qnoc_config_parse(const char* text, qnoc_config** out);
QNOC_API qnoc_status qnoc_config_load(const char* path, qnoc_config** out);

/* Set or read back one dotted key, e.g. "scheme", "initiator.CPU.think_cycles",
 * "thread.VID.alloc_mbytes", "node.n1.inputs". */
QNOC_API qnoc_status qnoc_config_set(qnoc_config* cfg, const char* key,
                                     const char* value);
QNOC_API qnoc_status qnoc_config_get(const qnoc_config* cfg, const char* key,
                                     char** out_value);

/* QNOC_OK when runnable; otherwise QNOC_ERROR_CONFIG with every violation
 * listed, one per line, in qnoc_last_error(). */
QNOC_API qnoc_status qnoc_config_validate(const qnoc_config* cfg);

/* The full scenario in the same text form qnoc_config_parse accepts. */
QNOC_API qnoc_status qnoc_config_text(const qnoc_config* cfg, char** out_text);

QNOC_API void qnoc_config_free(qnoc_config* cfg);

/* ---- Running and reports ---- */

/* Validates, then simulates warmup plus measurement. */
QNOC_API qnoc_status qnoc_run(const qnoc_config* cfg, qnoc_report** out);

QNOC_API qnoc_status qnoc_report_summary_csv(const qnoc_report* rep, char** out);
QNOC_API qnoc_status qnoc_report_windows_csv(const qnoc_report* rep, char** out);
QNOC_API qnoc_status qnoc_report_summary_text(const qnoc_report* rep, char** out);

QNOC_API int qnoc_report_initiator_count(const qnoc_report* rep);
/* NULL when index is out of range; valid until qnoc_report_free. */
QNOC_API const char* qnoc_report_initiator_name(const qnoc_report* rep, int index);

/* One numeric result. With an initiator name: offered_mbytes,
 * delivered_mbytes, reads, writes, read_lat_min, read_lat_mean, read_lat_p95,
 * read_lat_max, target_lat_min, target_lat_mean, target_lat_p95,
 * target_lat_max, queue_delay_p95, jitter_bytes, demoted_fraction,
 * credit_min_beats, credit_max_beats, mips. With initiator == NULL:
 * measure_cycles, duration_s, total_delivered_mbytes, tdma_wasted_slots,
 * emitted_requests, completed_requests, in_flight_requests, seed.
 * Metrics a run did not track (jitter for a non-stream source, credits
 * without a counter, mips of a non-CPU) fail with QNOC_ERROR_ARGUMENT. */
QNOC_API qnoc_status qnoc_report_metric(const qnoc_report* rep,
                                        const char* initiator,
                                        const char* metric, double* out);

QNOC_API void qnoc_report_free(qnoc_report* rep);

/* Releases strings returned via char** out-parameters. */
QNOC_API void qnoc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* QNOC_QNOC_H */
