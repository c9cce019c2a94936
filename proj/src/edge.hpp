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

#ifndef QNOC_EDGE_HPP
#define QNOC_EDGE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "arbiters.hpp"
#include "config.hpp"
#include "credit.hpp"
#include "fabric.hpp"
#include "target.hpp"
#include "types.hpp"

namespace qnoc {

// One data beat moved on the target interface this cycle.
struct BeatEvent {
  std::uint32_t thread = 0;
  std::uint32_t bytes = 0;
};

// A burst finished its last beat. For reads, response_cycle is when the tail
// of the data lands back at the initiator.
struct CompletionEvent {
  Request req;
  Cycle grant_cycle = 0;
  Cycle last_beat = 0;
  Cycle response_cycle = 0;
};

// The agent in front of the shared target: per-thread queues, the configured
// arbitration scheme, and (under qos) the credit counters that demote a
// thread past its allocation to best effort.
class Edge {
 public:
  static Edge build(const ScenarioConfig& cfg);

  EdgeQueues& queues() { return queues_; }
  const EdgeQueues& queues() const { return queues_; }

  // Phase hooks, one call each per cycle.
  void tick_credits();

  struct StepResult {
    std::optional<BeatEvent> beat;
    std::optional<CompletionEvent> completion;
    bool tdma_slot_wasted = false;
  };
  StepResult step(Cycle now);

  void advance_epochs();

  // Effective per-thread levels after demotion; what the sideband carries.
  const std::vector<QosLevel>& effective_levels() const { return effective_; }

  bool demoted(std::uint32_t thread) const;
  double credit_beats(std::uint32_t thread) const;
  bool has_counter(std::uint32_t thread) const;

  // Requests accepted but not yet fully serviced (queues plus open bursts).
  std::uint64_t in_flight() const;

 private:
  void refresh_levels();
  Pick pick_scheme(Cycle now);

  struct Active {
    Request req;
    Cycle grant = 0;
    std::uint32_t beats_total = 0;
    std::uint32_t beats_done = 0;
    std::uint32_t bytes_total = 0;
  };

  // Emits the next beat of `a`; fills out a completion when it was the last.
  void emit_beat(Active& a, Cycle now, StepResult& out);

  Scheme scheme_ = Scheme::Qos;
  std::uint32_t word_bytes_ = 4;
  TargetModel target_;
  EdgeQueues queues_;
  std::vector<QosLevel> configured_;
  std::vector<QosLevel> effective_;
  std::vector<std::optional<CreditCounter>> counters_;

  // qos: one epoch instance per level, cascaded high to low. The boundary
  // flags are per thread and shared by the levels: a marker is honored at
  // most once at this arbitration point.
  std::array<EpochArbiterState, 3> level_epoch_;
  std::vector<bool> boundary_spent_;

  // Baseline scheme state.
  std::vector<std::uint32_t> priority_order_;
  RoundRobinState rr_;
  TdmaWheel wheel_;
  FixedWeightState fw_;

  // Data path. Burst schemes drive one burst at a time to completion; tdma
  // interleaves open bursts beat by beat as their owners' slots come up.
  std::optional<Active> active_;
  std::vector<std::optional<Active>> tdma_open_;
};

}  // namespace qnoc

#endif  // QNOC_EDGE_HPP
