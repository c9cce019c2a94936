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

#include "presets.hpp"

namespace qnoc {

namespace {

// The shared system model: 200 MHz, 8-byte target interface (1.6 GB/s peak),
// 8-byte words so the CPU's 4-word cache line is 32 bytes.
//
// CPU   closed loop, 4-word reads, 1 writeback per 4 misses; the think time
//       models the phase: 4 cycles between misses when thrashing (25%
//       loadstore miss rate), 35 when cache friendly (2.85%).
// MPEG  bursty stream, 800 MB/s, 1..8 word bursts, 2 reads per write.
// VID   strictly periodic stream, 200 MB/s, 8-word reads only.
// GEN   bursty background stream, 100 MB/s, 1..8 words, reads = writes.
ScenarioConfig base_system(bool high_miss) {
  ScenarioConfig cfg;
  cfg.word_bytes = 8;
  cfg.clock_mhz = 200.0;
  cfg.queue_depth = 4;
  cfg.sideband_delay = 0;
  cfg.warmup_cycles = 10000;
  cfg.sim_cycles = 2000000;
  cfg.window_cycles = 10000;
  cfg.seed = 1;

  InitiatorSpec cpu;
  cpu.name = "CPU";
  cpu.kind = TrafficKind::Cpu;
  cpu.burst_words = 4;
  cpu.writeback_prob = 0.25;
  cpu.loadstore_fraction = 0.25;
  cpu.think_cycles = high_miss ? 4.0 : 35.0;
  cpu.miss_rate = high_miss ? 0.25 : 0.0285;

  InitiatorSpec mpeg;
  mpeg.name = "MPEG";
  mpeg.kind = TrafficKind::Stream;
  mpeg.arrival = ArrivalKind::Bursty;
  mpeg.rate_mbytes = 800.0;
  mpeg.words_min = 1;
  mpeg.words_max = 8;
  mpeg.read_prob = 2.0 / 3.0;

  InitiatorSpec vid;
  vid.name = "VID";
  vid.kind = TrafficKind::Stream;
  vid.arrival = ArrivalKind::Regular;
  vid.rate_mbytes = 200.0;
  vid.words_min = 8;
  vid.words_max = 8;
  vid.read_prob = 1.0;

  InitiatorSpec gen;
  gen.name = "GEN";
  gen.kind = TrafficKind::Stream;
  gen.arrival = ArrivalKind::Bursty;
  gen.rate_mbytes = 100.0;
  gen.words_min = 1;
  gen.words_max = 8;
  gen.read_prob = 0.5;

  cfg.initiators = {cpu, mpeg, vid, gen};

  for (const char* name : {"CPU", "MPEG", "VID", "GEN"}) {
    ThreadSpec t;
    t.name = name;
    t.level = QosLevel::BestEffort;
    // Baseline schemes have no epoch machinery: an epoch too long to ever
    // close leaves the interior links as plain least-recently-served
    // interleaving.  The qos presets override this.
    t.epoch_size = 1000000000;
    cfg.threads.push_back(t);
  }

  cfg.nodes = {NodeSpec{"node1", {"VID", "GEN"}},
               NodeSpec{"node2", {"CPU", "MPEG", "node1"}}};
  cfg.root = "node2";
  return cfg;
}

ScenarioConfig preset_priority(bool high_miss) {
  ScenarioConfig cfg = base_system(high_miss);
  cfg.name = high_miss ? "priority-high" : "priority-low";
  cfg.scheme = Scheme::FixedPriority;
  cfg.priority_order = {"CPU", "MPEG", "VID", "GEN"};
  return cfg;
}

ScenarioConfig preset_tdma(bool high_miss) {
  ScenarioConfig cfg = base_system(high_miss);
  cfg.name = high_miss ? "tdma-high" : "tdma-low";
  cfg.scheme = Scheme::Tdma;
  // Per 8-slot revolution: MPEG 4 (800 MB/s), CPU 2 (400), VID 1 (200),
  // GEN 1 (200); matches each stream's needs with CPU sized for its low
  // phase.  The rotation is chosen so the strictly periodic VID stream,
  // which emits at the start of each 64-cycle frame and reaches the edge
  // within 6 cycles worst case, always finds its slot in the same
  // revolution: VID sits at wheel phase 7.  Any other phase lets fabric
  // contention jitter push an arrival past its slot once in a while, which
  // shows up as a full extra revolution of service deficit.
  cfg.tdma_slots = {"MPEG", "CPU", "MPEG", "GEN", "MPEG", "CPU", "MPEG", "VID"};
  return cfg;
}

ScenarioConfig preset_qos(bool high_miss) {
  ScenarioConfig cfg = base_system(high_miss);
  cfg.name = high_miss ? "qos-high" : "qos-low";
  cfg.scheme = Scheme::Qos;
  for (auto& t : cfg.threads) {
    // Epochs of 8 requests: fine enough for fairness, coarse enough that the
    // one-cycle boundary turnover is amortized away on latency paths.
    t.epoch_size = 8;
    if (t.name == "CPU") {
      t.level = QosLevel::Priority;
      t.alloc_mbytes = 560.0;
      // The CPU is latency critical and closed loop: it never has more than
      // one read outstanding, so over-rate excursions are brief by
      // construction.  A shallow debt floor bounds each demoted stint to a
      // few cycles (debt repays at the allocation rate) instead of letting
      // one read+writeback burst buy a ~20-cycle exile, while the ceiling
      // still caps sustained throughput near the allocation.
      t.neg_limit_beats = -2.0;
    } else if (t.name == "MPEG") {
      t.level = QosLevel::Bandwidth;
      t.alloc_mbytes = 800.0;
    } else if (t.name == "VID") {
      t.level = QosLevel::Bandwidth;
      t.alloc_mbytes = 240.0;
    }
    // GEN stays best effort on the leftovers.
  }
  return cfg;
}

}  // namespace

const std::vector<PresetInfo>& preset_list() {
  static const std::vector<PresetInfo> kList = {
      {"priority-low", "fixed priority, CPU first; CPU in its low miss-rate phase"},
      {"priority-high", "fixed priority, CPU first; CPU thrashing"},
      {"tdma-low", "8-slot TDMA wheel; CPU in its low miss-rate phase"},
      {"tdma-high", "8-slot TDMA wheel; CPU thrashing"},
      {"qos-low", "epoch + credit QoS; CPU in its low miss-rate phase"},
      {"qos-high", "epoch + credit QoS; CPU thrashing"},
  };
  return kList;
}

std::optional<ScenarioConfig> make_preset(const std::string& name) {
  if (name == "priority-low") return preset_priority(false);
  if (name == "priority-high") return preset_priority(true);
  if (name == "tdma-low") return preset_tdma(false);
  if (name == "tdma-high") return preset_tdma(true);
  if (name == "qos-low") return preset_qos(false);
  if (name == "qos-high") return preset_qos(true);
  return std::nullopt;
}

}  // namespace qnoc
