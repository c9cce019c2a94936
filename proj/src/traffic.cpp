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

#include "traffic.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace qnoc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t global_seed, const std::string& name,
                          std::uint64_t salt) {
  return splitmix64(global_seed ^ fnv1a64(name) ^ (salt * 0x9e3779b97f4a7c15ull));
}

namespace {

// Closed loop: one outstanding read, think between misses, occasional
// writeback of a dirty line right behind the read that evicts it.
class CpuGenerator : public Generator {
 public:
  CpuGenerator(const InitiatorSpec& spec, std::uint64_t seed)
      : spec_(spec), rng_(seed) {
    next_emit_ = rng_.geometric(spec_.think_cycles);
  }

  void step(Cycle now, const GenContext&, std::vector<Emission>& out) override {
    if (waiting_ || now < next_emit_) return;
    out.push_back(Emission{ReqKind::Read, spec_.burst_words});
    if (rng_.bernoulli(spec_.writeback_prob))
      out.push_back(Emission{ReqKind::Write, spec_.burst_words});
    waiting_ = true;
  }

  void on_read_response(Cycle now) override {
    waiting_ = false;
    next_emit_ = now + rng_.geometric(spec_.think_cycles);
  }

 private:
  InitiatorSpec spec_;
  Rng rng_;
  bool waiting_ = false;
  Cycle next_emit_ = 0;
};

// Open loop at a configured byte rate. Bursty draws sizes and geometric
// gaps; regular emits a fixed-size burst on an exact period. Neither
// variant reacts to backpressure; backlog is offered load.
class StreamGenerator : public Generator {
 public:
  StreamGenerator(const InitiatorSpec& spec, std::uint32_t word_bytes,
                  double clock_mhz, std::uint64_t seed)
      : spec_(spec), word_bytes_(word_bytes), rng_(seed) {
    bytes_per_cycle_ = spec.rate_mbytes / clock_mhz;  // MB/s over Mcycle/s
    if (bytes_per_cycle_ <= 0.0) return;              // silent source
    if (spec_.arrival == ArrivalKind::Regular) {
      period_ = burst_bytes(spec_.words_max, word_bytes_) / bytes_per_cycle_;
      emitted_ = 0;
    } else {
      next_cycle_ = first_gap();
    }
  }

  void step(Cycle now, const GenContext&, std::vector<Emission>& out) override {
    if (bytes_per_cycle_ <= 0.0) return;
    if (spec_.arrival == ArrivalKind::Regular) {
      // First burst at cycle 0, then exactly on period (fractional periods
      // accumulate without drift).
      const Cycle due = static_cast<Cycle>(
          std::llround(static_cast<double>(emitted_) * period_));
      if (now < due) return;
      out.push_back(Emission{draw_kind(), spec_.words_max});
      emitted_ += 1;
      return;
    }
    if (now < next_cycle_) return;
    const std::uint32_t words = rng_.uniform_int(spec_.words_min, spec_.words_max);
    out.push_back(Emission{draw_kind(), words});
    next_cycle_ = now + rng_.geometric(mean_gap());
  }

 private:
  ReqKind draw_kind() {
    return rng_.bernoulli(spec_.read_prob) ? ReqKind::Read : ReqKind::Write;
  }

  double mean_bytes() const {
    return 0.5 * (burst_bytes(spec_.words_min, word_bytes_) +
                  burst_bytes(spec_.words_max, word_bytes_));
  }

  double mean_gap() const { return mean_bytes() / bytes_per_cycle_; }

  Cycle first_gap() { return rng_.geometric(mean_gap()); }

  InitiatorSpec spec_;
  std::uint32_t word_bytes_;
  Rng rng_;
  double bytes_per_cycle_ = 0.0;
  // bursty
  Cycle next_cycle_ = 0;
  // regular
  double period_ = 0.0;
  std::uint64_t emitted_ = 0;
};

// Saturates its thread: a fresh request whenever the previous one has been
// taken into the fabric.
class GreedyGenerator : public Generator {
 public:
  GreedyGenerator(const InitiatorSpec& spec, std::uint64_t seed)
      : spec_(spec), rng_(seed) {}

  void step(Cycle, const GenContext& ctx, std::vector<Emission>& out) override {
    if (ctx.source_backlog > 0) return;
    out.push_back(Emission{
        rng_.bernoulli(spec_.read_prob) ? ReqKind::Read : ReqKind::Write,
        spec_.burst_words});
  }

 private:
  InitiatorSpec spec_;
  Rng rng_;
};

class ReplayGenerator : public Generator {
 public:
  explicit ReplayGenerator(std::vector<TraceRecord> records)
      : records_(std::move(records)) {}

  void step(Cycle now, const GenContext&, std::vector<Emission>& out) override {
    while (idx_ < records_.size() && records_[idx_].cycle <= now) {
      out.push_back(Emission{records_[idx_].kind, records_[idx_].words});
      ++idx_;
    }
  }

 private:
  std::vector<TraceRecord> records_;
  std::size_t idx_ = 0;
};

}  // namespace

TraceLoadResult load_trace(const std::string& path) {
  TraceLoadResult r;
  std::ifstream in(path);
  if (!in) {
    r.error = "cannot open trace file: " + path;
    return r;
  }
  std::string line;
  int lineno = 0;
  std::map<std::string, Cycle> last_cycle;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("cycle,", 0) == 0) continue;  // header
    std::stringstream ss(line);
    std::string cyc, name, kind, words;
    if (!std::getline(ss, cyc, ',') || !std::getline(ss, name, ',') ||
        !std::getline(ss, kind, ',') || !std::getline(ss, words, ',')) {
      r.error = path + ":" + std::to_string(lineno) + ": expected cycle,initiator,kind,words";
      return r;
    }
    TraceRecord rec;
    char* end = nullptr;
    rec.cycle = std::strtoull(cyc.c_str(), &end, 10);
    if (end != cyc.c_str() + cyc.size()) {
      r.error = path + ":" + std::to_string(lineno) + ": bad cycle '" + cyc + "'";
      return r;
    }
    rec.initiator = name;
    if (kind == "read") rec.kind = ReqKind::Read;
    else if (kind == "write") rec.kind = ReqKind::Write;
    else {
      r.error = path + ":" + std::to_string(lineno) + ": bad kind '" + kind + "'";
      return r;
    }
    const unsigned long w = std::strtoul(words.c_str(), &end, 10);
    if (end != words.c_str() + words.size() || w < 1 || w > 8) {
      r.error = path + ":" + std::to_string(lineno) + ": bad words '" + words + "'";
      return r;
    }
    rec.words = static_cast<std::uint32_t>(w);
    auto [it, fresh] = last_cycle.try_emplace(rec.initiator, rec.cycle);
    if (!fresh) {
      if (rec.cycle < it->second) {
        r.error = path + ":" + std::to_string(lineno) + ": cycles go backwards for " +
                  rec.initiator;
        return r;
      }
      it->second = rec.cycle;
    }
    r.records.push_back(std::move(rec));
  }
  r.ok = true;
  return r;
}

std::string trace_to_csv(const std::vector<TraceRecord>& records) {
  std::string out = "cycle,initiator,kind,words\n";
  for (const auto& rec : records) {
    out += std::to_string(rec.cycle);
    out += ',';
    out += rec.initiator;
    out += ',';
    out += to_string(rec.kind);
    out += ',';
    out += std::to_string(rec.words);
    out += '\n';
  }
  return out;
}

std::unique_ptr<Generator> make_generator(const ScenarioConfig& cfg,
                                          const InitiatorSpec& spec) {
  const std::uint64_t seed = derive_seed(cfg.seed, spec.name, spec.seed);
  switch (spec.kind) {
    case TrafficKind::Cpu:
      return std::make_unique<CpuGenerator>(spec, seed);
    case TrafficKind::Stream:
      return std::make_unique<StreamGenerator>(spec, cfg.word_bytes, cfg.clock_mhz, seed);
    case TrafficKind::Greedy:
      return std::make_unique<GreedyGenerator>(spec, seed);
    case TrafficKind::Replay: {
      auto loaded = load_trace(spec.replay_file);
      // Validation checked the path exists and parses; a race between then
      // and now just yields an empty generator.
      std::vector<TraceRecord> mine;
      for (auto& rec : loaded.records) {
        if (rec.initiator == spec.name) mine.push_back(std::move(rec));
      }
      return std::make_unique<ReplayGenerator>(std::move(mine));
    }
  }
  return nullptr;
}

}  // namespace qnoc
