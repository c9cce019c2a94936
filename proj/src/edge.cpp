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

#include "edge.hpp"

namespace qnoc {

namespace {

constexpr QosLevel kLevelsHighFirst[] = {QosLevel::Priority, QosLevel::Bandwidth,
                                         QosLevel::BestEffort};

}  // namespace

Edge Edge::build(const ScenarioConfig& cfg) {
  Edge e;
  e.scheme_ = cfg.scheme;
  e.word_bytes_ = cfg.word_bytes;
  const std::size_t n = cfg.initiators.size();
  e.queues_.queues.assign(n, ThreadFifo{{}, cfg.queue_depth});
  e.configured_.assign(n, QosLevel::BestEffort);
  e.counters_.assign(n, std::nullopt);
  e.boundary_spent_.assign(n, false);
  e.tdma_open_.assign(n, std::nullopt);

  std::vector<std::uint32_t> all_threads;
  for (std::uint32_t t = 0; t < n; ++t) all_threads.push_back(t);
  for (auto& st : e.level_epoch_) st = EpochArbiterState::make(all_threads);

  for (const auto& ts : cfg.threads) {
    const int t = cfg.initiator_index(ts.name);
    e.configured_[t] = ts.level;
    if (cfg.scheme == Scheme::Qos && ts.level != QosLevel::BestEffort) {
      // Allocation as beats per cycle: the target moves one beat per cycle at
      // peak, so the fraction of peak is the fraction of a beat.
      const double beats_per_cycle = ts.alloc_mbytes / cfg.peak_mbytes();
      e.counters_[t] = CreditCounter::make(beats_per_cycle,
                                           effective_pos_limit(cfg, ts),
                                           effective_neg_limit(cfg, ts));
    }
  }

  for (const auto& name : cfg.priority_order)
    e.priority_order_.push_back(cfg.initiator_index(name));
  for (const auto& name : cfg.tdma_slots)
    e.wheel_.slots.push_back(cfg.initiator_index(name));
  for (std::uint32_t t = 0; t < n; ++t) {
    for (const auto& w : cfg.weights) {
      if (cfg.initiator_index(w.first) == static_cast<int>(t))
        e.fw_.weights.push_back(WeightEntry{t, w.second});
    }
  }

  e.effective_.assign(n, QosLevel::BestEffort);
  e.refresh_levels();
  return e;
}

void Edge::refresh_levels() {
  for (std::size_t t = 0; t < configured_.size(); ++t) {
    const bool demoted = counters_[t] && credit_demoted(*counters_[t]);
    effective_[t] = effective_level(configured_[t], demoted);
  }
}

void Edge::tick_credits() {
  for (auto& c : counters_) {
    if (c) *c = credit_tick(*c);
  }
  refresh_levels();
}

bool Edge::demoted(std::uint32_t thread) const {
  return configured_[thread] != QosLevel::BestEffort &&
         effective_[thread] == QosLevel::BestEffort;
}

double Edge::credit_beats(std::uint32_t thread) const {
  return counters_[thread] ? credits_to_beats(counters_[thread]->count) : 0.0;
}

bool Edge::has_counter(std::uint32_t thread) const {
  return counters_[thread].has_value();
}

std::uint64_t Edge::in_flight() const {
  std::uint64_t n = queues_.total_queued();
  if (active_) ++n;
  for (const auto& a : tdma_open_) {
    if (a) ++n;
  }
  return n;
}

Pick Edge::pick_scheme(Cycle now) {
  (void)now;
  std::vector<BranchView> views;
  views.reserve(queues_.queues.size());
  for (std::uint32_t t = 0; t < queues_.queues.size(); ++t) {
    BranchView v;
    v.branch_id = t;
    v.has_pending = !queues_.queues[t].empty();
    v.head_marked = v.has_pending && queues_.queues[t].q.front().epoch_marker &&
                    !boundary_spent_[t];
    views.push_back(v);
  }

  switch (scheme_) {
    case Scheme::FixedPriority:
      return fixed_priority_pick(views, priority_order_);
    case Scheme::RoundRobin: {
      auto r = round_robin_pick(views, rr_);
      rr_ = r.state;
      return r.winner;
    }
    case Scheme::FixedWeight: {
      auto r = fixed_weight_pick(views, fw_);
      fw_ = r.state;
      return r.winner;
    }
    case Scheme::Tdma:
      // Handled in step(); the wheel owns the data path there.
      return std::nullopt;
    case Scheme::Qos: {
      // Strict precedence between effective levels, epoch fairness within.
      for (QosLevel level : kLevelsHighFirst) {
        std::vector<BranchView> lv;
        for (const auto& v : views) {
          if (v.has_pending && effective_[v.branch_id] == level) lv.push_back(v);
        }
        if (lv.empty()) continue;
        auto r = epoch_pick(lv, level_epoch_[static_cast<int>(level)]);
        if (r.winner) {
          level_epoch_[static_cast<int>(level)] = std::move(r.state);
          return r.winner;
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

void Edge::emit_beat(Active& a, Cycle now, StepResult& out) {
  const std::uint32_t before = a.beats_done * kBeatBytes;
  std::uint32_t bytes = kBeatBytes;
  if (a.beats_done + 1 == a.beats_total) bytes = a.bytes_total - before;
  a.beats_done += 1;
  out.beat = BeatEvent{a.req.thread, bytes};
  if (a.beats_done == a.beats_total) {
    CompletionEvent c;
    c.req = a.req;
    c.grant_cycle = a.grant;
    c.last_beat = now;
    c.response_cycle = now + target_.latency_cycles;
    out.completion = c;
  }
}

Edge::StepResult Edge::step(Cycle now) {
  StepResult out;

  if (scheme_ == Scheme::Tdma) {
    if (wheel_.slots.empty()) return out;
    const std::uint32_t owner = wheel_.slots[wheel_.index];
    wheel_.index = (wheel_.index + 1) % wheel_.slots.size();

    if (!tdma_open_[owner] && !queues_.queues[owner].empty()) {
      Active a;
      a.req = queues_.queues[owner].q.front();
      queues_.queues[owner].q.pop_front();
      boundary_spent_[owner] = false;
      a.grant = now;
      a.bytes_total = burst_bytes(a.req.burst_words, word_bytes_);
      a.beats_total = burst_beats(a.req.burst_words, word_bytes_);
      tdma_open_[owner] = a;
    }
    if (tdma_open_[owner]) {
      emit_beat(*tdma_open_[owner], now, out);
      if (out.completion) tdma_open_[owner].reset();
    } else {
      // Nobody home: the slot is wasted, the wheel moves on regardless.
      out.tdma_slot_wasted = true;
    }
    return out;
  }

  // Burst-at-a-time schemes: the data path belongs to one burst until its
  // last beat; a new grant starts the same cycle the path goes idle.
  if (!active_) {
    const Pick winner = pick_scheme(now);
    if (winner) {
      const std::uint32_t t = *winner;
      Active a;
      a.req = queues_.queues[t].q.front();
      queues_.queues[t].q.pop_front();
      boundary_spent_[t] = false;
      a.grant = now;
      a.bytes_total = burst_bytes(a.req.burst_words, word_bytes_);
      a.beats_total = burst_beats(a.req.burst_words, word_bytes_);
      target_service(target_, a.req.burst_words, word_bytes_, now);
      if (counters_[t]) *counters_[t] = credit_debit(*counters_[t], a.beats_total);
      active_ = a;
    }
  }
  if (active_) {
    emit_beat(*active_, now, out);
    if (out.completion) active_.reset();
  }
  return out;
}

void Edge::advance_epochs() {
  if (scheme_ != Scheme::Qos) return;
  for (QosLevel level : kLevelsHighFirst) {
    std::vector<BranchView> views;
    for (std::uint32_t t = 0; t < queues_.queues.size(); ++t) {
      if (effective_[t] != level) continue;
      BranchView v;
      v.branch_id = t;
      v.has_pending = !queues_.queues[t].empty();
      v.head_marked = v.has_pending && queues_.queues[t].q.front().epoch_marker &&
                      !boundary_spent_[t];
      views.push_back(v);
    }
    auto r = epoch_advance(views, level_epoch_[static_cast<int>(level)]);
    if (!r.advanced) continue;
    level_epoch_[static_cast<int>(level)] = std::move(r.state);
    for (const auto& v : views) {
      if (v.has_pending && v.head_marked) boundary_spent_[v.branch_id] = true;
    }
  }
}

}  // namespace qnoc
