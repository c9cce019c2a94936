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

#ifndef QNOC_METRICS_HPP
#define QNOC_METRICS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "types.hpp"

namespace qnoc {

struct LatencySummary {
  std::uint64_t count = 0;
  double min = 0.0;
  double mean = 0.0;
  double p95 = 0.0;  // nearest rank
  double max = 0.0;
};

LatencySummary summarize_latencies(std::vector<std::uint32_t> samples);

// Service-deficit jitter: how far cumulative service S(t) swings behind the
// ideal line r*t, measured as max over t of D(t) - min over t' <= t of D(t')
// with D(t) = r*t - S(t). Zero for perfectly paced service; one burst's worth
// for service in clumps.
//
// Streaming form; equals the quadratic reference evaluation on the same
// events (see the tests), but runs in O(1) memory during a simulation.
class JitterTracker {
 public:
  JitterTracker() = default;
  JitterTracker(double bytes_per_cycle, Cycle start)
      : rate_(bytes_per_cycle), start_(start) {}

  void add(Cycle t, std::uint32_t bytes) {
    // D ramps up between events; its local max is right before this event.
    const double before = deficit_at(t);
    if (before - min_deficit_ > swing_) swing_ = before - min_deficit_;
    served_ += bytes;
    const double after = deficit_at(t);
    if (after < min_deficit_) min_deficit_ = after;
  }

  double finish(Cycle end) const {
    const double d = rate_ * static_cast<double>(end - start_) - served_;
    const double s = d - min_deficit_;
    return s > swing_ ? s : swing_;
  }

 private:
  double deficit_at(Cycle t) const {
    return rate_ * static_cast<double>(t - start_) - served_;
  }

  double rate_ = 0.0;
  Cycle start_ = 0;
  double served_ = 0.0;
  double min_deficit_ = 0.0;
  double swing_ = 0.0;
};

// Reference evaluation of the same quantity over a recorded event list
// (cycle, bytes), events in nondecreasing cycle order over [start, end].
double service_deficit_jitter(const std::vector<std::pair<Cycle, std::uint32_t>>& events,
                              double bytes_per_cycle, Cycle start, Cycle end);

struct InitiatorReport {
  std::string name;
  double offered_mbytes = 0.0;    // measured emission rate, MB/s
  double delivered_mbytes = 0.0;  // measured service rate, MB/s
  std::uint64_t reads = 0;        // completed in the measurement window
  std::uint64_t writes = 0;
  LatencySummary read_latency;     // emission to last response beat, cycles
  LatencySummary target_latency;   // edge arrival to last response beat
  LatencySummary queue_delay;      // cycles waited at the edge beyond the pipeline
  bool has_jitter = false;
  double jitter_bytes = 0.0;
  double demoted_fraction = 0.0;
  bool has_credit = false;
  double credit_min_beats = 0.0;
  double credit_max_beats = 0.0;
  bool has_mips = false;
  double mips = 0.0;
  std::vector<std::uint64_t> window_bytes;  // delivered per window
};

struct RunReport {
  std::string scenario;
  Scheme scheme = Scheme::Qos;
  std::uint64_t seed = 0;
  std::uint64_t measure_cycles = 0;
  std::uint64_t window_cycles = 0;
  double duration_s = 0.0;
  double total_delivered_mbytes = 0.0;
  std::uint64_t tdma_wasted_slots = 0;
  std::vector<InitiatorReport> initiators;

  // Whole-run request conservation: every emission is either serviced or
  // still somewhere in the system when the run stops.
  std::uint64_t emitted_requests = 0;
  std::uint64_t completed_requests = 0;
  std::uint64_t in_flight_requests = 0;

  std::vector<std::uint64_t> window_total_bytes;

  const InitiatorReport* find(const std::string& name) const;
};

std::string summary_csv(const RunReport& r);
std::string windows_csv(const RunReport& r);
std::string summary_text(const RunReport& r);

}  // namespace qnoc

#endif  // QNOC_METRICS_HPP
