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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "../src/config.hpp"
#include "../src/engine.hpp"
#include "../src/metrics.hpp"
#include "../src/presets.hpp"
#include "../src/traffic.hpp"

namespace {

using namespace qnoc;

void check_conservation(const RunReport& r) {
  CHECK(r.emitted_requests == r.completed_requests + r.in_flight_requests);
}

// One CPU alone on the root switch, no writebacks: the pipeline is the only
// source of latency.
ScenarioConfig solo_cpu() {
  ScenarioConfig cfg;
  cfg.name = "solo-cpu";
  cfg.scheme = Scheme::FixedPriority;
  cfg.word_bytes = 8;
  cfg.warmup_cycles = 500;
  cfg.sim_cycles = 20000;
  cfg.window_cycles = 5000;

  InitiatorSpec cpu;
  cpu.name = "CPU";
  cpu.kind = TrafficKind::Cpu;
  cpu.think_cycles = 5.0;
  cpu.burst_words = 4;  // 32 bytes = 4 beats
  cpu.writeback_prob = 0.0;
  cfg.initiators.push_back(cpu);

  ThreadSpec t;
  t.name = "CPU";
  t.level = QosLevel::BestEffort;
  t.epoch_size = 1000000000;
  cfg.threads.push_back(t);

  NodeSpec root;
  root.name = "n0";
  root.inputs = {"CPU"};
  cfg.nodes = {root};
  cfg.root = "n0";
  cfg.priority_order = {"CPU"};
  return cfg;
}

}  // namespace

TEST_CASE("engine: uncontended one-hop read latency is constant") {
  ScenarioConfig cfg = solo_cpu();
  REQUIRE(validate(cfg).empty());
  RunResult r = run_scenario(cfg);
  REQUIRE(r.ok);
  const InitiatorReport* cpu = r.report.find("CPU");
  REQUIRE(cpu != nullptr);

  CHECK(cpu->reads > 500);
  // One hop to the edge, one cycle to the grant, four data beats: the last
  // response beat lands six cycles after emission, every time.
  CHECK(cpu->read_latency.min == 6.0);
  CHECK(cpu->read_latency.max == 6.0);
  // Seen from the edge: one cycle of target latency plus four of occupancy.
  CHECK(cpu->target_latency.min == 5.0);
  CHECK(cpu->target_latency.max == 5.0);
  CHECK(cpu->queue_delay.max == 0.0);
  CHECK(cpu->offered_mbytes == doctest::Approx(cpu->delivered_mbytes).epsilon(0.02));

  REQUIRE(cpu->has_mips);
  const double instr_per_miss = 1.0 / (0.25 * 0.0285);
  CHECK(cpu->mips ==
        doctest::Approx(static_cast<double>(cpu->reads) * instr_per_miss /
                        r.report.duration_s / 1e6));
  check_conservation(r.report);
}

TEST_CASE("engine: an extra switch adds exactly one cycle") {
  ScenarioConfig cfg;
  cfg.scheme = Scheme::FixedPriority;
  cfg.word_bytes = 8;
  cfg.warmup_cycles = 1000;
  cfg.sim_cycles = 30000;
  cfg.window_cycles = 10000;

  InitiatorSpec v;
  v.name = "V";
  v.kind = TrafficKind::Stream;
  v.arrival = ArrivalKind::Regular;
  v.rate_mbytes = 200.0;
  v.words_max = 8;  // 64-byte bursts, one per 64 cycles
  v.read_prob = 1.0;
  cfg.initiators.push_back(v);

  ThreadSpec t;
  t.name = "V";
  t.level = QosLevel::BestEffort;
  t.epoch_size = 1000000000;
  cfg.threads.push_back(t);

  NodeSpec n1;
  n1.name = "n1";
  n1.inputs = {"V"};
  NodeSpec n0;
  n0.name = "n0";
  n0.inputs = {"n1"};
  cfg.nodes = {n1, n0};
  cfg.root = "n0";
  cfg.priority_order = {"V"};
  REQUIRE(validate(cfg).empty());

  RunResult r = run_scenario(cfg);
  REQUIRE(r.ok);
  const InitiatorReport* rep = r.report.find("V");
  REQUIRE(rep != nullptr);
  // Two hops, one grant cycle, eight beats: 11 cycles end to end.
  CHECK(rep->read_latency.min == 11.0);
  CHECK(rep->read_latency.max == 11.0);
  CHECK(rep->target_latency.min == 9.0);
  CHECK(rep->target_latency.max == 9.0);
  CHECK(rep->delivered_mbytes == doctest::Approx(rep->offered_mbytes));
  CHECK(rep->has_jitter);
  check_conservation(r.report);
}

TEST_CASE("engine: same seed, same bytes") {
  auto preset = make_preset("qos-low");
  REQUIRE(preset.has_value());
  ScenarioConfig cfg = *preset;
  REQUIRE(config_set(cfg, "warmup_cycles", "2000").empty());
  REQUIRE(config_set(cfg, "sim_cycles", "50000").empty());
  REQUIRE(validate(cfg).empty());

  RunResult a = run_scenario(cfg);
  RunResult b = run_scenario(cfg);
  REQUIRE(a.ok);
  REQUIRE(b.ok);
  CHECK(summary_csv(a.report) == summary_csv(b.report));
  CHECK(windows_csv(a.report) == windows_csv(b.report));
}

TEST_CASE("engine: zero measured cycles yields an empty report") {
  ScenarioConfig cfg = solo_cpu();
  cfg.sim_cycles = 0;
  REQUIRE(validate(cfg).empty());
  RunResult r = run_scenario(cfg);
  REQUIRE(r.ok);
  CHECK(r.report.measure_cycles == 0);
  CHECK(r.report.duration_s == 0.0);
  CHECK(r.report.total_delivered_mbytes == 0.0);
  const InitiatorReport* cpu = r.report.find("CPU");
  REQUIRE(cpu != nullptr);
  CHECK(cpu->reads == 0);
  CHECK(cpu->delivered_mbytes == 0.0);
  CHECK(cpu->mips == 0.0);
  CHECK(cpu->window_bytes.empty());
  check_conservation(r.report);
}

TEST_CASE("engine: a recorded run replays to the same result") {
  auto preset = make_preset("qos-low");
  REQUIRE(preset.has_value());
  ScenarioConfig cfg = *preset;
  REQUIRE(config_set(cfg, "warmup_cycles", "1000").empty());
  REQUIRE(config_set(cfg, "sim_cycles", "30000").empty());
  REQUIRE(validate(cfg).empty());

  std::vector<TraceRecord> trace;
  RunOptions opts;
  opts.emission_trace = &trace;
  RunResult original = run_scenario(cfg, opts);
  REQUIRE(original.ok);
  REQUIRE_FALSE(trace.empty());

  const std::string path = "qnoc_test_replay_trace.csv";
  {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << trace_to_csv(trace);
  }

  ScenarioConfig replay = cfg;
  for (auto& ini : replay.initiators) {
    ini.kind = TrafficKind::Replay;
    ini.replay_file = path;
  }
  REQUIRE(validate(replay).empty());
  RunResult again = run_scenario(replay);
  REQUIRE(again.ok);

  for (const auto& want : original.report.initiators) {
    const InitiatorReport* got = again.report.find(want.name);
    REQUIRE(got != nullptr);
    CHECK(got->offered_mbytes == want.offered_mbytes);
    CHECK(got->delivered_mbytes == want.delivered_mbytes);
    CHECK(got->reads == want.reads);
    CHECK(got->writes == want.writes);
    CHECK(got->read_latency.mean == want.read_latency.mean);
    CHECK(got->read_latency.p95 == want.read_latency.p95);
    CHECK(got->queue_delay.p95 == want.queue_delay.p95);
  }
  std::remove(path.c_str());
}

TEST_CASE("engine: a missing replay file fails cleanly") {
  ScenarioConfig cfg = solo_cpu();
  cfg.initiators[0].kind = TrafficKind::Replay;
  cfg.initiators[0].replay_file = "does_not_exist_qnoc.csv";
  REQUIRE(validate(cfg).empty());
  RunResult r = run_scenario(cfg);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("engine: overspending its allocation demotes a thread") {
  ScenarioConfig cfg;
  cfg.scheme = Scheme::Qos;
  cfg.word_bytes = 8;
  cfg.warmup_cycles = 1000;
  cfg.sim_cycles = 40000;
  cfg.window_cycles = 10000;

  for (const char* name : {"A", "B"}) {
    InitiatorSpec ini;
    ini.name = name;
    ini.kind = TrafficKind::Greedy;
    ini.burst_words = 4;
    cfg.initiators.push_back(ini);
  }
  ThreadSpec a;
  a.name = "A";
  a.level = QosLevel::Priority;
  a.alloc_mbytes = 16.0;  // far below greedy demand: demoted almost always
  a.epoch_size = 8;
  ThreadSpec b;
  b.name = "B";
  b.level = QosLevel::Bandwidth;
  b.alloc_mbytes = 800.0;
  b.epoch_size = 8;
  cfg.threads = {a, b};

  NodeSpec root;
  root.name = "n0";
  root.inputs = {"A", "B"};
  cfg.nodes = {root};
  cfg.root = "n0";

  for (std::uint32_t delay : {0u, 5u}) {
    cfg.sideband_delay = delay;
    REQUIRE(validate(cfg).empty());
    RunResult r = run_scenario(cfg);
    REQUIRE(r.ok);
    const InitiatorReport* ra = r.report.find("A");
    REQUIRE(ra != nullptr);
    CHECK(ra->demoted_fraction > 0.5);
    CHECK(ra->has_credit);
    CHECK(ra->credit_min_beats < 0.0);
    check_conservation(r.report);
  }
}

TEST_CASE("engine: window series add up to the totals") {
  ScenarioConfig cfg = solo_cpu();
  REQUIRE(validate(cfg).empty());
  RunResult r = run_scenario(cfg);
  REQUIRE(r.ok);
  const RunReport& rep = r.report;
  REQUIRE(rep.window_total_bytes.size() == 4);  // 20000 / 5000

  std::uint64_t across_windows = 0;
  for (std::uint64_t w : rep.window_total_bytes) across_windows += w;
  std::uint64_t across_initiators = 0;
  for (const auto& i : rep.initiators) {
    std::uint64_t mine = 0;
    for (std::uint64_t w : i.window_bytes) mine += w;
    across_initiators += mine;
    CHECK(i.delivered_mbytes ==
          doctest::Approx(static_cast<double>(mine) / rep.duration_s / 1e6));
  }
  CHECK(across_windows == across_initiators);
  CHECK(rep.total_delivered_mbytes ==
        doctest::Approx(static_cast<double>(across_windows) / rep.duration_s / 1e6));
}
