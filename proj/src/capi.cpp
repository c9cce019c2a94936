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

#include "qnoc/qnoc.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"
#include "engine.hpp"
#include "metrics.hpp"
#include "presets.hpp"

struct qnoc_config {
  qnoc::ScenarioConfig cfg;
};

struct qnoc_report {
  qnoc::RunReport rep;
};

namespace {

thread_local std::string g_last_error;

qnoc_status fail(qnoc_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

qnoc_status ok() {
  g_last_error.clear();
  return QNOC_OK;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qnoc_status string_out(const std::string& s, char** out) {
  if (out == nullptr) return fail(QNOC_ERROR_ARGUMENT, "output pointer is NULL");
  *out = copy_string(s);
  if (*out == nullptr) return fail(QNOC_ERROR_RUNTIME, "out of memory");
  return ok();
}

std::string join_violations(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& m : v) {
    if (!out.empty()) out += '\n';
    out += m;
  }
  return out;
}

}  // namespace

extern "C" {

const char* qnoc_version(void) { return "1.0.0"; }

const char* qnoc_last_error(void) { return g_last_error.c_str(); }

int qnoc_preset_count(void) {
  return static_cast<int>(qnoc::preset_list().size());
}

const char* qnoc_preset_name(int index) {
  const auto& list = qnoc::preset_list();
  if (index < 0 || index >= static_cast<int>(list.size())) return nullptr;
  return list[static_cast<std::size_t>(index)].name.c_str();
}

const char* qnoc_preset_description(int index) {
  const auto& list = qnoc::preset_list();
  if (index < 0 || index >= static_cast<int>(list.size())) return nullptr;
  return list[static_cast<std::size_t>(index)].description.c_str();
}

qnoc_status qnoc_config_create(qnoc_config** out) {
  if (out == nullptr) return fail(QNOC_ERROR_ARGUMENT, "output pointer is NULL");
  *out = new qnoc_config{};
  return ok();
}

qnoc_status qnoc_config_preset(const char* name, qnoc_config** out) {
  if (name == nullptr || out == nullptr)
    return fail(QNOC_ERROR_ARGUMENT, "name and output pointer must not be NULL");
  auto cfg = qnoc::make_preset(name);
  if (!cfg.has_value())
    return fail(QNOC_ERROR_CONFIG, std::string("unknown preset: ") + name);
  *out = new qnoc_config{std::move(*cfg)};
  return ok();
}

qnoc_status qnoc_config_parse(const char* text, qnoc_config** out) {
  if (text == nullptr || out == nullptr)
    return fail(QNOC_ERROR_ARGUMENT, "text and output pointer must not be NULL");
  qnoc::ConfigResult r = qnoc::config_from_text(text);
  if (!r.ok) return fail(QNOC_ERROR_CONFIG, r.error);
  *out = new qnoc_config{std::move(r.config)};
  return ok();
}

qnoc_status qnoc_config_load(const char* path, qnoc_config** out) {
  if (path == nullptr || out == nullptr)
    return fail(QNOC_ERROR_ARGUMENT, "path and output pointer must not be NULL");
  std::ifstream in(path);
  if (!in.good())
    return fail(QNOC_ERROR_CONFIG, std::string("cannot read config file: ") + path);
  std::ostringstream text;
  text << in.rdbuf();
  return qnoc_config_parse(text.str().c_str(), out);
}

qnoc_status qnoc_config_set(qnoc_config* cfg, const char* key, const char* value) {
  if (cfg == nullptr || key == nullptr || value == nullptr)
    return fail(QNOC_ERROR_ARGUMENT, "config, key and value must not be NULL");
  const std::string err = qnoc::config_set(cfg->cfg, key, value);
  if (!err.empty()) return fail(QNOC_ERROR_CONFIG, err);
  return ok();
}

qnoc_status qnoc_config_get(const qnoc_config* cfg, const char* key,
                            char** out_value) {
  if (cfg == nullptr || key == nullptr)
    return fail(QNOC_ERROR_ARGUMENT, "config and key must not be NULL");
  qnoc::ConfigGetResult r = qnoc::config_get(cfg->cfg, key);
  if (!r.ok) return fail(QNOC_ERROR_CONFIG, r.error);
  return string_out(r.value, out_value);
}

qnoc_status qnoc_config_validate(const qnoc_config* cfg) {
  if (cfg == nullptr) return fail(QNOC_ERROR_ARGUMENT, "config must not be NULL");
  const auto violations = qnoc::validate(cfg->cfg);
  if (!violations.empty())
    return fail(QNOC_ERROR_CONFIG, join_violations(violations));
  return ok();
}

qnoc_status qnoc_config_text(const qnoc_config* cfg, char** out_text) {
  if (cfg == nullptr) return fail(QNOC_ERROR_ARGUMENT, "config must not be NULL");
  return string_out(qnoc::config_to_text(cfg->cfg), out_text);
}

void qnoc_config_free(qnoc_config* cfg) { delete cfg; }

qnoc_status qnoc_run(const qnoc_config* cfg, qnoc_report** out) {
  if (cfg == nullptr || out == nullptr)
    return fail(QNOC_ERROR_ARGUMENT, "config and output pointer must not be NULL");
  const auto violations = qnoc::validate(cfg->cfg);
  if (!violations.empty())
    return fail(QNOC_ERROR_CONFIG, join_violations(violations));
  qnoc::RunResult r = qnoc::run_scenario(cfg->cfg);
  if (!r.ok) return fail(QNOC_ERROR_RUNTIME, r.error);
  *out = new qnoc_report{std::move(r.report)};
  return ok();
}

qnoc_status qnoc_report_summary_csv(const qnoc_report* rep, char** out) {
  if (rep == nullptr) return fail(QNOC_ERROR_ARGUMENT, "report must not be NULL");
  return string_out(qnoc::summary_csv(rep->rep), out);
}

qnoc_status qnoc_report_windows_csv(const qnoc_report* rep, char** out) {
  if (rep == nullptr) return fail(QNOC_ERROR_ARGUMENT, "report must not be NULL");
  return string_out(qnoc::windows_csv(rep->rep), out);
}

qnoc_status qnoc_report_summary_text(const qnoc_report* rep, char** out) {
  if (rep == nullptr) return fail(QNOC_ERROR_ARGUMENT, "report must not be NULL");
  return string_out(qnoc::summary_text(rep->rep), out);
}

int qnoc_report_initiator_count(const qnoc_report* rep) {
  if (rep == nullptr) return 0;
  return static_cast<int>(rep->rep.initiators.size());
}

const char* qnoc_report_initiator_name(const qnoc_report* rep, int index) {
  if (rep == nullptr) return nullptr;
  if (index < 0 || index >= static_cast<int>(rep->rep.initiators.size()))
    return nullptr;
  return rep->rep.initiators[static_cast<std::size_t>(index)].name.c_str();
}

qnoc_status qnoc_report_metric(const qnoc_report* rep, const char* initiator,
                               const char* metric, double* out) {
  if (rep == nullptr || metric == nullptr || out == nullptr)
    return fail(QNOC_ERROR_ARGUMENT, "report, metric and output must not be NULL");
  const std::string m = metric;

  if (initiator == nullptr) {
    const qnoc::RunReport& r = rep->rep;
    if (m == "measure_cycles") *out = static_cast<double>(r.measure_cycles);
    else if (m == "duration_s") *out = r.duration_s;
    else if (m == "total_delivered_mbytes") *out = r.total_delivered_mbytes;
    else if (m == "tdma_wasted_slots") *out = static_cast<double>(r.tdma_wasted_slots);
    else if (m == "emitted_requests") *out = static_cast<double>(r.emitted_requests);
    else if (m == "completed_requests") *out = static_cast<double>(r.completed_requests);
    else if (m == "in_flight_requests") *out = static_cast<double>(r.in_flight_requests);
    else if (m == "seed") *out = static_cast<double>(r.seed);
    else return fail(QNOC_ERROR_ARGUMENT, "unknown run metric: " + m);
    return ok();
  }

  const qnoc::InitiatorReport* i = rep->rep.find(initiator);
  if (i == nullptr)
    return fail(QNOC_ERROR_ARGUMENT, std::string("unknown initiator: ") + initiator);

  if (m == "offered_mbytes") *out = i->offered_mbytes;
  else if (m == "delivered_mbytes") *out = i->delivered_mbytes;
  else if (m == "reads") *out = static_cast<double>(i->reads);
  else if (m == "writes") *out = static_cast<double>(i->writes);
  else if (m == "read_lat_min") *out = i->read_latency.min;
  else if (m == "read_lat_mean") *out = i->read_latency.mean;
  else if (m == "read_lat_p95") *out = i->read_latency.p95;
  else if (m == "read_lat_max") *out = i->read_latency.max;
  else if (m == "target_lat_min") *out = i->target_latency.min;
  else if (m == "target_lat_mean") *out = i->target_latency.mean;
  else if (m == "target_lat_p95") *out = i->target_latency.p95;
  else if (m == "target_lat_max") *out = i->target_latency.max;
  else if (m == "queue_delay_p95") *out = i->queue_delay.p95;
  else if (m == "jitter_bytes") {
    if (!i->has_jitter)
      return fail(QNOC_ERROR_ARGUMENT, "jitter was not tracked for " + i->name);
    *out = i->jitter_bytes;
  } else if (m == "demoted_fraction") *out = i->demoted_fraction;
  else if (m == "credit_min_beats" || m == "credit_max_beats") {
    if (!i->has_credit)
      return fail(QNOC_ERROR_ARGUMENT, i->name + " has no credit counter");
    *out = m == "credit_min_beats" ? i->credit_min_beats : i->credit_max_beats;
  } else if (m == "mips") {
    if (!i->has_mips)
      return fail(QNOC_ERROR_ARGUMENT, i->name + " models no instruction stream");
    *out = i->mips;
  } else {
    return fail(QNOC_ERROR_ARGUMENT, "unknown initiator metric: " + m);
  }
  return ok();
}

void qnoc_report_free(qnoc_report* rep) { delete rep; }

void qnoc_string_free(char* s) { std::free(s); }

}  // extern "C"
