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

#ifndef QNOC_CONFIG_HPP
#define QNOC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace qnoc {

enum class Scheme : std::uint8_t { FixedPriority, RoundRobin, Tdma, FixedWeight, Qos };

enum class TrafficKind : std::uint8_t { Cpu, Stream, Greedy, Replay };

enum class ArrivalKind : std::uint8_t { Bursty, Regular };

const char* to_string(Scheme s);
const char* to_string(TrafficKind k);
const char* to_string(ArrivalKind a);

// Traffic source description. Which fields matter depends on `kind`; unused
// ones keep their defaults and are ignored.
struct InitiatorSpec {
  std::string name;
  TrafficKind kind = TrafficKind::Stream;
  bool enabled = true;
  std::uint64_t seed = 0;  // per-initiator salt on top of the global seed

  // kind == Cpu: closed loop, at most one outstanding read. After each read
  // response the core computes for a geometrically distributed number of
  // cycles (mean think_cycles), then issues the next burst_words read; with
  // probability writeback_prob a same-size writeback follows immediately.
  double think_cycles = 35.0;
  std::uint32_t burst_words = 4;
  double writeback_prob = 0.25;
  // Bookkeeping for the MIPS estimate: one miss per loadstore_fraction *
  // miss_rate instructions.
  double loadstore_fraction = 0.25;
  double miss_rate = 0.0285;

  // kind == Stream: open loop at rate_mbytes (1 MB = 1e6 bytes). Bursty picks
  // sizes uniformly in [words_min, words_max] with geometric gaps; regular
  // emits fixed words_max-word bursts on an exact period.
  ArrivalKind arrival = ArrivalKind::Bursty;
  double rate_mbytes = 0.0;
  std::uint32_t words_min = 1;
  std::uint32_t words_max = 8;
  double read_prob = 1.0;

  // kind == Greedy: a new burst_words request (read with prob read_prob)
  // whenever there is queue space. Saturates its branch; used for stress
  // setups rather than the preset-style workloads.

  // kind == Replay: re-issue requests recorded in a trace file (see
  // traffic.hpp for the format); rows for other initiators are skipped.
  std::string replay_file;
};

// Service contract of one thread. Threads map 1:1 onto initiators by name;
// the level and allocation drive the edge, the epoch size drives marker
// insertion at the boundary.
struct ThreadSpec {
  std::string name;
  QosLevel level = QosLevel::BestEffort;
  double alloc_mbytes = 0.0;  // guaranteed share, MB/s; 0 for best effort
  std::uint64_t epoch_size = 1;
  // Credit saturation in beats; 0 means default (twice the largest burst,
  // negated for the floor).
  double pos_limit_beats = 0.0;
  double neg_limit_beats = 0.0;
};

// One interconnect switch. Inputs are initiator names (injection points) or
// other node names (children). The tree roots at `root`, which feeds the
// target edge.
struct NodeSpec {
  std::string name;
  std::vector<std::string> inputs;
};

struct ScenarioConfig {
  std::string name = "custom";
  Scheme scheme = Scheme::Qos;
  std::uint64_t seed = 1;
  std::uint32_t word_bytes = 4;
  std::uint64_t warmup_cycles = 10000;
  std::uint64_t sim_cycles = 1000000;  // measured cycles, after warmup
  std::uint32_t queue_depth = 4;
  std::uint32_t sideband_delay = 0;
  std::uint64_t window_cycles = 10000;
  double clock_mhz = 200.0;

  std::vector<InitiatorSpec> initiators;
  std::vector<ThreadSpec> threads;
  std::vector<NodeSpec> nodes;
  std::string root;

  std::vector<std::string> priority_order;  // fixed_priority: high to low
  std::vector<std::string> tdma_slots;      // tdma: wheel, one owner per slot
  std::vector<std::pair<std::string, std::uint32_t>> weights;  // fixed_weight

  double peak_mbytes() const { return clock_mhz * kBeatBytes; }

  int initiator_index(const std::string& n) const;
  int thread_index(const std::string& n) const;
  int node_index(const std::string& n) const;
};

// Largest burst this source can emit, in words; sizes the default credit
// saturation window.
std::uint32_t max_burst_words(const InitiatorSpec& spec);

// Effective credit limits in beats after applying defaults.
double effective_pos_limit(const ScenarioConfig& cfg, const ThreadSpec& t);
double effective_neg_limit(const ScenarioConfig& cfg, const ThreadSpec& t);

// All violations, empty when the config is runnable. Messages name the
// offending key or entity.
std::vector<std::string> validate(const ScenarioConfig& cfg);

// Flat "key = value" text form. Every scalar maps to a dotted key; list
// values are comma separated. config_set is the one place key semantics
// live: files, command-line overrides and the library API all funnel
// through it.
std::string config_to_text(const ScenarioConfig& cfg);

struct ConfigResult {
  bool ok = false;
  ScenarioConfig config;
  std::string error;
};

ConfigResult config_from_text(const std::string& text);

// Set one key. Returns an empty string on success, else the reason. Unknown
// keys are errors; initiator/thread/node sections spring into being on first
// mention.
std::string config_set(ScenarioConfig& cfg, const std::string& key,
                       const std::string& value);

// Read one key back in the same textual form. Empty optional-style: ok=false
// and error set when the key does not resolve.
struct ConfigGetResult {
  bool ok = false;
  std::string value;
  std::string error;
};

ConfigGetResult config_get(const ScenarioConfig& cfg, const std::string& key);

}  // namespace qnoc

#endif  // QNOC_CONFIG_HPP
