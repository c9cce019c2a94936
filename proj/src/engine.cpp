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

#include "engine.hpp"

#include <deque>
#include <queue>

#include "edge.hpp"
#include "fabric.hpp"

namespace qnoc {

namespace {

struct ResponseEvent {
  Cycle cycle;
  std::uint32_t initiator;
  bool operator>(const ResponseEvent& o) const { return cycle > o.cycle; }
};

// Per-initiator measurement accumulators, merged into the report at the end.
struct InitStats {
  std::uint64_t offered_bytes = 0;
  std::uint64_t delivered_bytes = 0;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::vector<std::uint32_t> read_latency;
  std::vector<std::uint32_t> target_latency;
  std::vector<std::uint32_t> queue_delay;
  std::uint64_t demoted_cycles = 0;
  double credit_min = 0.0;
  double credit_max = 0.0;
  bool credit_seen = false;
  JitterTracker jitter;
  std::vector<std::uint64_t> window_bytes;
};

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  RunResult result;

  const std::size_t n = cfg.initiators.size();
  const Cycle measure_start = cfg.warmup_cycles;
  const Cycle end = cfg.warmup_cycles + cfg.sim_cycles;
  const std::size_t n_windows =
      static_cast<std::size_t>((cfg.sim_cycles + cfg.window_cycles - 1) / cfg.window_cycles);

  // Traffic sources. Replay files are checked up front so a bad path fails
  // the run instead of simulating silence.
  std::vector<std::unique_ptr<Generator>> gens(n);
  for (std::size_t i = 0; i < n; ++i) {
    const InitiatorSpec& spec = cfg.initiators[i];
    if (!spec.enabled) continue;
    if (spec.kind == TrafficKind::Replay) {
      auto probe = load_trace(spec.replay_file);
      if (!probe.ok) {
        result.error = probe.error;
        return result;
      }
    }
    gens[i] = make_generator(cfg, spec);
  }

  // Per-thread epoch sizes and cpu parameters, resolved by name once.
  std::vector<std::uint64_t> epoch_size(n, 1);
  std::vector<double> alloc_mbytes(n, 0.0);
  for (const auto& t : cfg.threads) {
    const int idx = cfg.initiator_index(t.name);
    epoch_size[idx] = t.epoch_size;
    alloc_mbytes[idx] = t.alloc_mbytes;
  }

  Fabric fabric = Fabric::build(cfg);
  Edge edge = Edge::build(cfg);

  std::vector<std::deque<Request>> source(n);  // emitted, not yet injected
  std::vector<std::uint64_t> seq(n, 0);
  std::priority_queue<ResponseEvent, std::vector<ResponseEvent>, std::greater<>> responses;

  std::vector<InitStats> stats(n);
  for (std::size_t i = 0; i < n; ++i) {
    stats[i].window_bytes.assign(n_windows, 0);
    const InitiatorSpec& spec = cfg.initiators[i];
    if (spec.kind == TrafficKind::Stream && spec.rate_mbytes > 0.0) {
      // Jitter against the tightest pace the configuration promises: the
      // offered rate, capped by the allocation when one is in force.
      double r = spec.rate_mbytes;
      if (cfg.scheme == Scheme::Qos && alloc_mbytes[i] > 0.0 && alloc_mbytes[i] < r)
        r = alloc_mbytes[i];
      stats[i].jitter = JitterTracker(r / cfg.clock_mhz, measure_start);
    }
  }
  std::vector<std::uint64_t> window_total(n_windows, 0);
  std::uint64_t emitted_requests = 0;
  std::uint64_t completed_requests = 0;
  std::uint64_t wasted_slots = 0;

  // Sideband history: levels computed at cycle t reach the fabric nodes at
  // t + sideband_delay. Pre-filled with the configured levels.
  std::vector<QosLevel> configured_levels(n, QosLevel::BestEffort);
  for (const auto& t : cfg.threads)
    configured_levels[cfg.initiator_index(t.name)] = t.level;
  std::deque<std::vector<QosLevel>> sideband(cfg.sideband_delay, configured_levels);

  const auto in_measure = [&](Cycle t) { return t >= measure_start && t < end; };
  const auto window_of = [&](Cycle t) {
    return static_cast<std::size_t>((t - measure_start) / cfg.window_cycles);
  };

  std::vector<Emission> emitted;
  for (Cycle now = 0; now < end; ++now) {
    // 1. Read responses whose last beat lands this cycle.
    while (!responses.empty() && responses.top().cycle == now) {
      const ResponseEvent ev = responses.top();
      responses.pop();
      if (gens[ev.initiator]) gens[ev.initiator]->on_read_response(now);
    }

    // 2. Emission and boundary injection. Sequence numbers and epoch markers
    // are stamped here, where requests enter the interconnect.
    for (std::size_t i = 0; i < n; ++i) {
      if (!gens[i]) continue;
      emitted.clear();
      GenContext ctx{source[i].size()};
      gens[i]->step(now, ctx, emitted);
      for (const Emission& e : emitted) {
        Request r;
        r.initiator = static_cast<std::uint16_t>(i);
        r.thread = static_cast<std::uint16_t>(i);
        r.kind = e.kind;
        r.burst_words = e.burst_words;
        r.seq_no = seq[i];
        r.epoch_marker = boundary_marker(seq[i], epoch_size[i]);
        r.issue_cycle = now;
        seq[i] += 1;
        emitted_requests += 1;
        if (in_measure(now))
          stats[i].offered_bytes += burst_bytes(e.burst_words, cfg.word_bytes);
        if (opts.emission_trace)
          opts.emission_trace->push_back(
              TraceRecord{now, cfg.initiators[i].name, e.kind, e.burst_words});
        source[i].push_back(r);
      }
      while (!source[i].empty() && fabric.can_accept(static_cast<std::uint32_t>(i))) {
        fabric.inject(source[i].front());
        source[i].pop_front();
      }
    }

    // 3. Credits earn their per-cycle allocation.
    edge.tick_credits();

    // 4. Edge data path: at most one beat on the target interface per cycle.
    const Edge::StepResult step = edge.step(now);
    if (step.tdma_slot_wasted && in_measure(now)) wasted_slots += 1;
    if (step.beat && in_measure(now)) {
      InitStats& s = stats[step.beat->thread];
      s.delivered_bytes += step.beat->bytes;
      s.window_bytes[window_of(now)] += step.beat->bytes;
      window_total[window_of(now)] += step.beat->bytes;
      s.jitter.add(now, step.beat->bytes);
    }
    if (step.completion) {
      const CompletionEvent& c = *step.completion;
      completed_requests += 1;
      if (c.req.kind == ReqKind::Read) {
        responses.push(ResponseEvent{c.response_cycle, c.req.initiator});
        if (in_measure(c.response_cycle)) {
          InitStats& s = stats[c.req.initiator];
          s.reads += 1;
          s.read_latency.push_back(
              static_cast<std::uint32_t>(c.response_cycle - c.req.issue_cycle));
          s.target_latency.push_back(
              static_cast<std::uint32_t>(c.response_cycle - c.req.edge_arrival));
          s.queue_delay.push_back(
              static_cast<std::uint32_t>(c.grant_cycle - c.req.edge_arrival - 1));
        }
      } else if (in_measure(c.last_beat)) {
        stats[c.req.initiator].writes += 1;
      }
    }

    // 5. Fabric forwarding under the (possibly delayed) published levels.
    sideband.push_back(edge.effective_levels());
    const std::vector<QosLevel> levels = std::move(sideband.front());
    sideband.pop_front();
    fabric.step(now, levels, edge.queues());

    // 6. Epoch turnover at every arbitration point, under the same level
    // view the nodes arbitrated with this cycle.
    fabric.advance_epochs(levels);
    edge.advance_epochs();

    // 7. Per-cycle sampling.
    if (in_measure(now)) {
      for (std::size_t i = 0; i < n; ++i) {
        if (edge.demoted(static_cast<std::uint32_t>(i))) stats[i].demoted_cycles += 1;
        if (edge.has_counter(static_cast<std::uint32_t>(i))) {
          const double b = edge.credit_beats(static_cast<std::uint32_t>(i));
          InitStats& s = stats[i];
          if (!s.credit_seen || b < s.credit_min) s.credit_min = b;
          if (!s.credit_seen || b > s.credit_max) s.credit_max = b;
          s.credit_seen = true;
        }
      }
    }
  }

  // Assemble the report.
  RunReport rep;
  rep.scenario = cfg.name;
  rep.scheme = cfg.scheme;
  rep.seed = cfg.seed;
  rep.measure_cycles = cfg.sim_cycles;
  rep.window_cycles = cfg.window_cycles;
  rep.duration_s = static_cast<double>(cfg.sim_cycles) / (cfg.clock_mhz * 1e6);
  rep.tdma_wasted_slots = wasted_slots;
  rep.window_total_bytes = window_total;
  rep.emitted_requests = emitted_requests;
  rep.completed_requests = completed_requests;

  std::uint64_t source_backlog = 0;
  for (const auto& q : source) source_backlog += q.size();
  rep.in_flight_requests = source_backlog + fabric.queued_requests() + edge.in_flight();

  // A zero-length measurement produces an empty but well formed report.
  const auto mbytes_per_s = [&](std::uint64_t bytes) {
    return rep.duration_s > 0.0 ? static_cast<double>(bytes) / rep.duration_s / 1e6 : 0.0;
  };

  std::uint64_t total_bytes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const InitiatorSpec& spec = cfg.initiators[i];
    InitiatorReport ir;
    ir.name = spec.name;
    ir.offered_mbytes = mbytes_per_s(stats[i].offered_bytes);
    ir.delivered_mbytes = mbytes_per_s(stats[i].delivered_bytes);
    total_bytes += stats[i].delivered_bytes;
    ir.reads = stats[i].reads;
    ir.writes = stats[i].writes;
    ir.read_latency = summarize_latencies(std::move(stats[i].read_latency));
    ir.target_latency = summarize_latencies(std::move(stats[i].target_latency));
    ir.queue_delay = summarize_latencies(std::move(stats[i].queue_delay));
    ir.demoted_fraction =
        cfg.sim_cycles > 0 ? static_cast<double>(stats[i].demoted_cycles) /
                                 static_cast<double>(cfg.sim_cycles)
                           : 0.0;
    if (spec.kind == TrafficKind::Stream && spec.rate_mbytes > 0.0) {
      ir.has_jitter = true;
      ir.jitter_bytes = stats[i].jitter.finish(end);
    }
    if (stats[i].credit_seen) {
      ir.has_credit = true;
      ir.credit_min_beats = stats[i].credit_min;
      ir.credit_max_beats = stats[i].credit_max;
    }
    if (spec.kind == TrafficKind::Cpu && spec.enabled) {
      // One miss per (loadstore_fraction * miss_rate) instructions; each
      // measured read response is one miss brought back from the target.
      const double instr_per_miss = 1.0 / (spec.loadstore_fraction * spec.miss_rate);
      ir.has_mips = true;
      ir.mips = rep.duration_s > 0.0
                    ? static_cast<double>(ir.reads) * instr_per_miss / rep.duration_s / 1e6
                    : 0.0;
    }
    ir.window_bytes = std::move(stats[i].window_bytes);
    rep.initiators.push_back(std::move(ir));
  }
  rep.total_delivered_mbytes = mbytes_per_s(total_bytes);

  result.ok = true;
  result.report = std::move(rep);
  return result;
}

}  // namespace qnoc
