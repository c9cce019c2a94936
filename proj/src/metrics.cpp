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

#include "metrics.hpp"

#include <algorithm>
#include <cstdio>

namespace qnoc {

LatencySummary summarize_latencies(std::vector<std::uint32_t> samples) {
  LatencySummary s;
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  s.count = samples.size();
  s.min = samples.front();
  s.max = samples.back();
  double sum = 0.0;
  for (std::uint32_t v : samples) sum += v;
  s.mean = sum / static_cast<double>(samples.size());
  const std::size_t rank = (samples.size() * 95 + 99) / 100;  // ceil(0.95 n)
  s.p95 = samples[rank == 0 ? 0 : rank - 1];
  return s;
}

double service_deficit_jitter(const std::vector<std::pair<Cycle, std::uint32_t>>& events,
                              double bytes_per_cycle, Cycle start, Cycle end) {
  JitterTracker t(bytes_per_cycle, start);
  for (const auto& [cycle, bytes] : events) t.add(cycle, bytes);
  return t.finish(end);
}

const InitiatorReport* RunReport::find(const std::string& name) const {
  for (const auto& i : initiators) {
    if (i.name == name) return &i;
  }
  return nullptr;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string summary_csv(const RunReport& r) {
  std::string out =
      "initiator,offered_mbytes,delivered_mbytes,reads,writes,"
      "read_lat_min,read_lat_mean,read_lat_p95,read_lat_max,"
      "target_lat_min,target_lat_mean,target_lat_p95,target_lat_max,"
      "queue_delay_p95,jitter_bytes,demoted_fraction,"
      "credit_min_beats,credit_max_beats,mips\n";
  for (const auto& i : r.initiators) {
    out += i.name;
    out += ',' + fmt(i.offered_mbytes) + ',' + fmt(i.delivered_mbytes);
    out += ',' + std::to_string(i.reads) + ',' + std::to_string(i.writes);
    out += ',' + fmt(i.read_latency.min) + ',' + fmt(i.read_latency.mean) + ',' +
           fmt(i.read_latency.p95) + ',' + fmt(i.read_latency.max);
    out += ',' + fmt(i.target_latency.min) + ',' + fmt(i.target_latency.mean) + ',' +
           fmt(i.target_latency.p95) + ',' + fmt(i.target_latency.max);
    out += ',' + fmt(i.queue_delay.p95);
    out += ',' + (i.has_jitter ? fmt(i.jitter_bytes) : std::string());
    out += ',' + fmt(i.demoted_fraction);
    out += ',' + (i.has_credit ? fmt(i.credit_min_beats) : std::string());
    out += ',' + (i.has_credit ? fmt(i.credit_max_beats) : std::string());
    out += ',' + (i.has_mips ? fmt(i.mips) : std::string());
    out += '\n';
  }
  return out;
}

std::string windows_csv(const RunReport& r) {
  std::string out = "window,start_cycle";
  for (const auto& i : r.initiators) out += ',' + i.name + "_bytes";
  out += ",total_bytes\n";
  for (std::size_t w = 0; w < r.window_total_bytes.size(); ++w) {
    out += std::to_string(w);
    out += ',' + std::to_string(w * r.window_cycles);
    for (const auto& i : r.initiators) out += ',' + std::to_string(i.window_bytes[w]);
    out += ',' + std::to_string(r.window_total_bytes[w]);
    out += '\n';
  }
  return out;
}

std::string summary_text(const RunReport& r) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "scenario %s  scheme %s  seed %llu\n",
                r.scenario.c_str(), to_string(r.scheme),
                static_cast<unsigned long long>(r.seed));
  out += line;
  std::snprintf(line, sizeof(line),
                "measured %llu cycles (%.3f ms)  delivered %.1f MB/s total\n",
                static_cast<unsigned long long>(r.measure_cycles), r.duration_s * 1e3,
                r.total_delivered_mbytes);
  out += line;
  if (r.scheme == Scheme::Tdma) {
    std::snprintf(line, sizeof(line), "tdma slots wasted: %llu\n",
                  static_cast<unsigned long long>(r.tdma_wasted_slots));
    out += line;
  }
  for (const auto& i : r.initiators) {
    std::snprintf(line, sizeof(line),
                  "  %-8s offered %8.1f MB/s  delivered %8.1f MB/s  reads %8llu"
                  "  lat p95 %6.0f cy",
                  i.name.c_str(), i.offered_mbytes, i.delivered_mbytes,
                  static_cast<unsigned long long>(i.reads), i.read_latency.p95);
    out += line;
    if (i.has_mips) {
      std::snprintf(line, sizeof(line), "  %7.1f MIPS", i.mips);
      out += line;
    }
    if (i.has_jitter) {
      std::snprintf(line, sizeof(line), "  jitter %7.1f B", i.jitter_bytes);
      out += line;
    }
    if (i.demoted_fraction > 0.0) {
      std::snprintf(line, sizeof(line), "  demoted %4.1f%%", i.demoted_fraction * 100.0);
      out += line;
    }
    out += '\n';
  }
  std::snprintf(line, sizeof(line),
                "  requests: emitted %llu = completed %llu + in flight %llu\n",
                static_cast<unsigned long long>(r.emitted_requests),
                static_cast<unsigned long long>(r.completed_requests),
                static_cast<unsigned long long>(r.in_flight_requests));
  out += line;
  return out;
}

}  // namespace qnoc
