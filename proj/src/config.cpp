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

#include "config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <sstream>

namespace qnoc {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, ',')) {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

bool parse_u64(const std::string& s, std::uint64_t* out) {
  const std::string t = trim(s);
  if (t.empty() || t[0] == '-') return false;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (errno != 0 || end != t.c_str() + t.size()) return false;
  *out = static_cast<std::uint64_t>(v);
  return true;
}

bool parse_u32(const std::string& s, std::uint32_t* out) {
  std::uint64_t v = 0;
  if (!parse_u64(s, &v) || v > 0xffffffffull) return false;
  *out = static_cast<std::uint32_t>(v);
  return true;
}

bool parse_double(const std::string& s, double* out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (errno != 0 || end != t.c_str() + t.size() || !std::isfinite(v)) return false;
  *out = v;
  return true;
}

bool parse_bool(const std::string& s, bool* out) {
  const std::string t = trim(s);
  if (t == "true" || t == "1") {
    *out = true;
    return true;
  }
  if (t == "false" || t == "0") {
    *out = false;
    return true;
  }
  return false;
}

std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }

// %.17g survives a parse round trip bit-exactly and still prints short
// decimals (0.25, 800) without noise.
std::string fmt_double(double v) {
  char buf[64];
  // Integral values read better plain: "300", not "3e+02".
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Prefer the shortest representation that parses back exactly.
  for (int prec = 1; prec < 17; ++prec) {
    char probe[64];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return buf;
}

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::FixedPriority: return "fixed_priority";
    case Scheme::RoundRobin: return "round_robin";
    case Scheme::Tdma: return "tdma";
    case Scheme::FixedWeight: return "fixed_weight";
    case Scheme::Qos: return "qos";
  }
  return "?";
}

const char* to_string(TrafficKind k) {
  switch (k) {
    case TrafficKind::Cpu: return "cpu";
    case TrafficKind::Stream: return "stream";
    case TrafficKind::Greedy: return "greedy";
    case TrafficKind::Replay: return "replay";
  }
  return "?";
}

const char* to_string(ArrivalKind a) {
  return a == ArrivalKind::Bursty ? "bursty" : "regular";
}

namespace {

bool parse_scheme(const std::string& s, Scheme* out) {
  const std::string t = trim(s);
  if (t == "fixed_priority") *out = Scheme::FixedPriority;
  else if (t == "round_robin") *out = Scheme::RoundRobin;
  else if (t == "tdma") *out = Scheme::Tdma;
  else if (t == "fixed_weight") *out = Scheme::FixedWeight;
  else if (t == "qos") *out = Scheme::Qos;
  else return false;
  return true;
}

bool parse_kind(const std::string& s, TrafficKind* out) {
  const std::string t = trim(s);
  if (t == "cpu") *out = TrafficKind::Cpu;
  else if (t == "stream") *out = TrafficKind::Stream;
  else if (t == "greedy") *out = TrafficKind::Greedy;
  else if (t == "replay") *out = TrafficKind::Replay;
  else return false;
  return true;
}

bool parse_arrival(const std::string& s, ArrivalKind* out) {
  const std::string t = trim(s);
  if (t == "bursty") *out = ArrivalKind::Bursty;
  else if (t == "regular") *out = ArrivalKind::Regular;
  else return false;
  return true;
}

bool parse_level(const std::string& s, QosLevel* out) {
  const std::string t = trim(s);
  if (t == "priority") *out = QosLevel::Priority;
  else if (t == "bandwidth") *out = QosLevel::Bandwidth;
  else if (t == "best_effort") *out = QosLevel::BestEffort;
  else return false;
  return true;
}

InitiatorSpec& get_or_add_initiator(ScenarioConfig& cfg, const std::string& name) {
  for (auto& i : cfg.initiators) {
    if (i.name == name) return i;
  }
  InitiatorSpec spec;
  spec.name = name;
  cfg.initiators.push_back(spec);
  return cfg.initiators.back();
}

ThreadSpec& get_or_add_thread(ScenarioConfig& cfg, const std::string& name) {
  for (auto& t : cfg.threads) {
    if (t.name == name) return t;
  }
  ThreadSpec spec;
  spec.name = name;
  cfg.threads.push_back(spec);
  return cfg.threads.back();
}

NodeSpec& get_or_add_node(ScenarioConfig& cfg, const std::string& name) {
  for (auto& n : cfg.nodes) {
    if (n.name == name) return n;
  }
  NodeSpec spec;
  spec.name = name;
  cfg.nodes.push_back(spec);
  return cfg.nodes.back();
}

}  // namespace

int ScenarioConfig::initiator_index(const std::string& n) const {
  for (std::size_t i = 0; i < initiators.size(); ++i) {
    if (initiators[i].name == n) return static_cast<int>(i);
  }
  return -1;
}

int ScenarioConfig::thread_index(const std::string& n) const {
  for (std::size_t i = 0; i < threads.size(); ++i) {
    if (threads[i].name == n) return static_cast<int>(i);
  }
  return -1;
}

int ScenarioConfig::node_index(const std::string& n) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == n) return static_cast<int>(i);
  }
  return -1;
}

std::uint32_t max_burst_words(const InitiatorSpec& spec) {
  switch (spec.kind) {
    case TrafficKind::Cpu: return spec.burst_words;
    case TrafficKind::Stream: return spec.words_max;
    case TrafficKind::Greedy: return spec.burst_words;
    case TrafficKind::Replay: return 8;
  }
  return 8;
}

double effective_pos_limit(const ScenarioConfig& cfg, const ThreadSpec& t) {
  if (t.pos_limit_beats > 0.0) return t.pos_limit_beats;
  const int idx = cfg.initiator_index(t.name);
  const std::uint32_t words = idx >= 0 ? max_burst_words(cfg.initiators[idx]) : 8;
  return 2.0 * burst_beats(words, cfg.word_bytes);
}

double effective_neg_limit(const ScenarioConfig& cfg, const ThreadSpec& t) {
  if (t.neg_limit_beats < 0.0) return t.neg_limit_beats;
  return -effective_pos_limit(cfg, t);
}

std::string config_set(ScenarioConfig& cfg, const std::string& rawkey,
                       const std::string& rawvalue) {
  const std::string key = trim(rawkey);
  const std::string value = trim(rawvalue);
  const auto bad = [&](const char* what) {
    return "invalid value for " + key + ": '" + value + "' (" + what + ")";
  };

  // Top-level scalars and lists.
  if (key == "name") {
    if (value.empty()) return bad("must not be empty");
    cfg.name = value;
    return "";
  }
  if (key == "scheme")
    return parse_scheme(value, &cfg.scheme) ? "" : bad(
        "one of fixed_priority, round_robin, tdma, fixed_weight, qos");
  if (key == "seed") return parse_u64(value, &cfg.seed) ? "" : bad("unsigned integer");
  if (key == "word_bytes")
    return parse_u32(value, &cfg.word_bytes) ? "" : bad("unsigned integer");
  if (key == "warmup_cycles")
    return parse_u64(value, &cfg.warmup_cycles) ? "" : bad("unsigned integer");
  if (key == "sim_cycles")
    return parse_u64(value, &cfg.sim_cycles) ? "" : bad("unsigned integer");
  if (key == "queue_depth")
    return parse_u32(value, &cfg.queue_depth) ? "" : bad("unsigned integer");
  if (key == "sideband_delay")
    return parse_u32(value, &cfg.sideband_delay) ? "" : bad("unsigned integer");
  if (key == "window_cycles")
    return parse_u64(value, &cfg.window_cycles) ? "" : bad("unsigned integer");
  if (key == "clock_mhz")
    return parse_double(value, &cfg.clock_mhz) ? "" : bad("number");
  if (key == "topology.root") {
    cfg.root = value;
    return "";
  }
  if (key == "priority_order") {
    cfg.priority_order = split_list(value);
    return "";
  }
  if (key == "tdma_slots") {
    cfg.tdma_slots = split_list(value);
    return "";
  }

  // Sectioned keys: initiator.<name>.<field>, thread.<name>.<field>,
  // node.<name>.inputs, weight.<name>.
  const std::size_t dot1 = key.find('.');
  if (dot1 == std::string::npos) return "unknown key: " + key;
  const std::string section = key.substr(0, dot1);
  const std::string rest = key.substr(dot1 + 1);

  if (section == "weight") {
    if (rest.empty()) return "unknown key: " + key;
    std::uint32_t w = 0;
    if (!parse_u32(value, &w)) return bad("unsigned integer");
    for (auto& e : cfg.weights) {
      if (e.first == rest) {
        e.second = w;
        return "";
      }
    }
    cfg.weights.emplace_back(rest, w);
    return "";
  }

  if (section == "node") {
    const std::size_t dot2 = rest.rfind('.');
    if (dot2 == std::string::npos) return "unknown key: " + key;
    const std::string name = rest.substr(0, dot2);
    const std::string field = rest.substr(dot2 + 1);
    if (name.empty() || field != "inputs") return "unknown key: " + key;
    get_or_add_node(cfg, name).inputs = split_list(value);
    return "";
  }

  if (section == "initiator" || section == "thread") {
    const std::size_t dot2 = rest.rfind('.');
    if (dot2 == std::string::npos) return "unknown key: " + key;
    const std::string name = rest.substr(0, dot2);
    const std::string field = rest.substr(dot2 + 1);
    if (name.empty() || field.empty()) return "unknown key: " + key;

    if (section == "thread") {
      ThreadSpec& t = get_or_add_thread(cfg, name);
      if (field == "level")
        return parse_level(value, &t.level) ? "" : bad(
            "one of priority, bandwidth, best_effort");
      if (field == "alloc_mbytes")
        return parse_double(value, &t.alloc_mbytes) ? "" : bad("number");
      if (field == "epoch_size")
        return parse_u64(value, &t.epoch_size) ? "" : bad("unsigned integer");
      if (field == "pos_limit_beats")
        return parse_double(value, &t.pos_limit_beats) ? "" : bad("number");
      if (field == "neg_limit_beats")
        return parse_double(value, &t.neg_limit_beats) ? "" : bad("number");
      return "unknown key: " + key;
    }

    InitiatorSpec& i = get_or_add_initiator(cfg, name);
    if (field == "kind")
      return parse_kind(value, &i.kind) ? "" : bad(
          "one of cpu, stream, greedy, replay");
    if (field == "enabled") return parse_bool(value, &i.enabled) ? "" : bad("bool");
    if (field == "seed") return parse_u64(value, &i.seed) ? "" : bad("unsigned integer");
    if (field == "think_cycles")
      return parse_double(value, &i.think_cycles) ? "" : bad("number");
    if (field == "burst_words")
      return parse_u32(value, &i.burst_words) ? "" : bad("unsigned integer");
    if (field == "writeback_prob")
      return parse_double(value, &i.writeback_prob) ? "" : bad("number");
    if (field == "loadstore_fraction")
      return parse_double(value, &i.loadstore_fraction) ? "" : bad("number");
    if (field == "miss_rate") return parse_double(value, &i.miss_rate) ? "" : bad("number");
    if (field == "arrival")
      return parse_arrival(value, &i.arrival) ? "" : bad("bursty or regular");
    if (field == "rate_mbytes")
      return parse_double(value, &i.rate_mbytes) ? "" : bad("number");
    if (field == "words_min")
      return parse_u32(value, &i.words_min) ? "" : bad("unsigned integer");
    if (field == "words_max")
      return parse_u32(value, &i.words_max) ? "" : bad("unsigned integer");
    if (field == "read_prob") return parse_double(value, &i.read_prob) ? "" : bad("number");
    if (field == "replay_file") {
      i.replay_file = value;
      return "";
    }
    return "unknown key: " + key;
  }

  return "unknown key: " + key;
}

namespace {

using Entry = std::pair<std::string, std::string>;

std::vector<Entry> config_entries(const ScenarioConfig& cfg) {
  std::vector<Entry> e;
  e.emplace_back("name", cfg.name);
  e.emplace_back("scheme", to_string(cfg.scheme));
  e.emplace_back("seed", fmt_u64(cfg.seed));
  e.emplace_back("word_bytes", fmt_u64(cfg.word_bytes));
  e.emplace_back("warmup_cycles", fmt_u64(cfg.warmup_cycles));
  e.emplace_back("sim_cycles", fmt_u64(cfg.sim_cycles));
  e.emplace_back("queue_depth", fmt_u64(cfg.queue_depth));
  e.emplace_back("sideband_delay", fmt_u64(cfg.sideband_delay));
  e.emplace_back("window_cycles", fmt_u64(cfg.window_cycles));
  e.emplace_back("clock_mhz", fmt_double(cfg.clock_mhz));

  for (const auto& i : cfg.initiators) {
    const std::string p = "initiator." + i.name + ".";
    e.emplace_back(p + "kind", to_string(i.kind));
    e.emplace_back(p + "enabled", fmt_bool(i.enabled));
    e.emplace_back(p + "seed", fmt_u64(i.seed));
    switch (i.kind) {
      case TrafficKind::Cpu:
        e.emplace_back(p + "burst_words", fmt_u64(i.burst_words));
        e.emplace_back(p + "think_cycles", fmt_double(i.think_cycles));
        e.emplace_back(p + "writeback_prob", fmt_double(i.writeback_prob));
        e.emplace_back(p + "loadstore_fraction", fmt_double(i.loadstore_fraction));
        e.emplace_back(p + "miss_rate", fmt_double(i.miss_rate));
        break;
      case TrafficKind::Stream:
        e.emplace_back(p + "arrival", to_string(i.arrival));
        e.emplace_back(p + "rate_mbytes", fmt_double(i.rate_mbytes));
        e.emplace_back(p + "words_min", fmt_u64(i.words_min));
        e.emplace_back(p + "words_max", fmt_u64(i.words_max));
        e.emplace_back(p + "read_prob", fmt_double(i.read_prob));
        break;
      case TrafficKind::Greedy:
        e.emplace_back(p + "burst_words", fmt_u64(i.burst_words));
        e.emplace_back(p + "read_prob", fmt_double(i.read_prob));
        break;
      case TrafficKind::Replay:
        e.emplace_back(p + "replay_file", i.replay_file);
        break;
    }
  }

  for (const auto& t : cfg.threads) {
    const std::string p = "thread." + t.name + ".";
    e.emplace_back(p + "level", to_string(t.level));
    e.emplace_back(p + "alloc_mbytes", fmt_double(t.alloc_mbytes));
    e.emplace_back(p + "epoch_size", fmt_u64(t.epoch_size));
    if (t.pos_limit_beats > 0.0)
      e.emplace_back(p + "pos_limit_beats", fmt_double(t.pos_limit_beats));
    if (t.neg_limit_beats < 0.0)
      e.emplace_back(p + "neg_limit_beats", fmt_double(t.neg_limit_beats));
  }

  for (const auto& n : cfg.nodes) {
    e.emplace_back("node." + n.name + ".inputs", join_list(n.inputs));
  }
  if (!cfg.root.empty()) e.emplace_back("topology.root", cfg.root);

  if (!cfg.priority_order.empty())
    e.emplace_back("priority_order", join_list(cfg.priority_order));
  if (!cfg.tdma_slots.empty()) e.emplace_back("tdma_slots", join_list(cfg.tdma_slots));
  for (const auto& w : cfg.weights) {
    e.emplace_back("weight." + w.first, fmt_u64(w.second));
  }
  return e;
}

}  // namespace

std::string config_to_text(const ScenarioConfig& cfg) {
  std::string out;
  std::string last_section;
  for (const auto& [k, v] : config_entries(cfg)) {
    // Blank line between sections keeps the file scannable.
    std::string section;
    const std::size_t dot1 = k.find('.');
    if (dot1 != std::string::npos) {
      const std::size_t dot2 = k.find('.', dot1 + 1);
      section = dot2 == std::string::npos ? k.substr(0, dot1) : k.substr(0, dot2);
    }
    if (section != last_section) {
      out += "\n";
      last_section = section;
    }
    out += k + " = " + v + "\n";
  }
  return out;
}

ConfigResult config_from_text(const std::string& text) {
  ConfigResult r;
  ScenarioConfig cfg;
  cfg.initiators.clear();
  cfg.threads.clear();
  cfg.nodes.clear();

  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      r.error = "line " + std::to_string(lineno) + ": expected 'key = value'";
      return r;
    }
    const std::string err = config_set(cfg, t.substr(0, eq), t.substr(eq + 1));
    if (!err.empty()) {
      r.error = "line " + std::to_string(lineno) + ": " + err;
      return r;
    }
  }
  r.ok = true;
  r.config = cfg;
  return r;
}

ConfigGetResult config_get(const ScenarioConfig& cfg, const std::string& key) {
  ConfigGetResult r;
  const std::string k = trim(key);
  for (const auto& [ek, ev] : config_entries(cfg)) {
    if (ek == k) {
      r.ok = true;
      r.value = ev;
      return r;
    }
  }
  r.error = "unknown key: " + k;
  return r;
}

namespace {

bool valid_name(const std::string& n) {
  if (n.empty()) return false;
  for (char c : n) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') continue;
    return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> validate(const ScenarioConfig& cfg) {
  std::vector<std::string> v;
  const auto err = [&](const std::string& m) { v.push_back(m); };

  if (cfg.clock_mhz <= 0.0) err("clock_mhz must be positive");
  if (cfg.word_bytes < 1 || cfg.word_bytes > 64) err("word_bytes must be in [1, 64]");
  if (cfg.queue_depth < 1) err("queue_depth must be at least 1");
  // sim_cycles = 0 is allowed: it yields an empty but well formed report.
  if (cfg.window_cycles < 1) err("window_cycles must be at least 1");

  if (cfg.initiators.empty()) err("at least one initiator is required");

  std::set<std::string> inames;
  for (const auto& i : cfg.initiators) {
    const std::string p = "initiator." + i.name + ": ";
    if (!valid_name(i.name)) {
      err("initiator name '" + i.name + "' must be [A-Za-z0-9_-]+");
      continue;
    }
    if (!inames.insert(i.name).second) err(p + "duplicate name");
    switch (i.kind) {
      case TrafficKind::Cpu:
        if (i.burst_words < 1 || i.burst_words > 8) err(p + "burst_words must be in [1, 8]");
        if (i.think_cycles < 1.0) err(p + "think_cycles must be at least 1");
        if (i.writeback_prob < 0.0 || i.writeback_prob > 1.0)
          err(p + "writeback_prob must be in [0, 1]");
        if (i.loadstore_fraction <= 0.0 || i.loadstore_fraction > 1.0)
          err(p + "loadstore_fraction must be in (0, 1]");
        if (i.miss_rate <= 0.0 || i.miss_rate > 1.0) err(p + "miss_rate must be in (0, 1]");
        break;
      case TrafficKind::Stream: {
        if (i.words_min < 1 || i.words_min > 8) err(p + "words_min must be in [1, 8]");
        if (i.words_max < 1 || i.words_max > 8) err(p + "words_max must be in [1, 8]");
        if (i.words_min > i.words_max) err(p + "words_min must not exceed words_max");
        if (i.rate_mbytes < 0.0) err(p + "rate_mbytes must be non-negative");
        if (i.read_prob < 0.0 || i.read_prob > 1.0) err(p + "read_prob must be in [0, 1]");
        // The emission schedule needs at least one cycle between bursts;
        // faster than that and the configured rate is not producible.
        const double ref_words = i.arrival == ArrivalKind::Regular
                                     ? i.words_max
                                     : 0.5 * (i.words_min + i.words_max);
        const double max_rate = ref_words * cfg.word_bytes * cfg.clock_mhz;
        if (cfg.clock_mhz > 0.0 && i.rate_mbytes > max_rate)
          err(p + "rate_mbytes exceeds one burst per cycle for this size");
        break;
      }
      case TrafficKind::Greedy:
        if (i.burst_words < 1 || i.burst_words > 8) err(p + "burst_words must be in [1, 8]");
        if (i.read_prob < 0.0 || i.read_prob > 1.0) err(p + "read_prob must be in [0, 1]");
        break;
      case TrafficKind::Replay:
        if (i.replay_file.empty()) err(p + "replay_file is required");
        break;
    }
  }

  // Threads pair 1:1 with initiators by name.
  std::set<std::string> tnames;
  double alloc_sum = 0.0;
  for (const auto& t : cfg.threads) {
    const std::string p = "thread." + t.name + ": ";
    if (!tnames.insert(t.name).second) err(p + "duplicate name");
    if (inames.count(t.name) == 0) err(p + "no initiator with this name");
    if (t.alloc_mbytes < 0.0) err(p + "alloc_mbytes must be non-negative");
    if (t.level == QosLevel::BestEffort && t.alloc_mbytes != 0.0)
      err(p + "best_effort threads take no allocation");
    if (t.level != QosLevel::BestEffort) alloc_sum += t.alloc_mbytes;
    if (t.epoch_size < 1) err(p + "epoch_size must be at least 1");
    if (t.pos_limit_beats < 0.0) err(p + "pos_limit_beats must be non-negative");
    if (t.neg_limit_beats > 0.0) err(p + "neg_limit_beats must be non-positive");
  }
  for (const auto& n : inames) {
    if (tnames.count(n) == 0) err("initiator " + n + ": missing thread." + n + " section");
  }
  if (alloc_sum > cfg.peak_mbytes() * (1.0 + 1e-9)) {
    err("allocation sum > 1: threads claim " + fmt_double(alloc_sum) +
        " MB/s of the " + fmt_double(cfg.peak_mbytes()) + " MB/s target peak");
  }

  // Topology: a tree of nodes; every initiator injects at exactly one node,
  // every non-root node feeds exactly one parent, the root feeds the target.
  if (cfg.nodes.empty()) {
    err("at least one node is required");
  } else {
    std::set<std::string> nnames;
    for (const auto& n : cfg.nodes) {
      if (!valid_name(n.name)) err("node name '" + n.name + "' must be [A-Za-z0-9_-]+");
      if (!nnames.insert(n.name).second) err("node." + n.name + ": duplicate name");
      if (inames.count(n.name) != 0) err("node." + n.name + ": name collides with an initiator");
    }
    if (cfg.root.empty()) {
      err("topology.root is required");
    } else if (nnames.count(cfg.root) == 0) {
      err("topology.root names unknown node " + cfg.root);
    }
    std::set<std::string> seen_inputs;
    for (const auto& n : cfg.nodes) {
      if (n.inputs.empty()) err("node." + n.name + ": needs at least one input");
      for (const auto& in : n.inputs) {
        if (inames.count(in) == 0 && nnames.count(in) == 0) {
          err("node." + n.name + ": unknown input " + in);
          continue;
        }
        if (!seen_inputs.insert(in).second)
          err("input " + in + " is wired into more than one node");
        if (in == cfg.root) err("the root node cannot be an input");
        if (in == n.name) err("node." + n.name + ": feeds itself");
      }
    }
    for (const auto& i : cfg.initiators) {
      if (seen_inputs.count(i.name) == 0)
        err("initiator " + i.name + " is not wired into any node");
    }
    for (const auto& n : cfg.nodes) {
      if (n.name != cfg.root && seen_inputs.count(n.name) == 0)
        err("node " + n.name + " output is not wired anywhere");
    }
    // Walking parents must reach the root without revisiting (catches cycles
    // that the exactly-one-parent rules alone would let through).
    if (nnames.count(cfg.root) != 0) {
      for (const auto& n : cfg.nodes) {
        std::set<std::string> visited;
        std::string cur = n.name;
        bool reached = false;
        while (visited.insert(cur).second) {
          if (cur == cfg.root) {
            reached = true;
            break;
          }
          std::string parent;
          for (const auto& m : cfg.nodes) {
            for (const auto& in : m.inputs) {
              if (in == cur) parent = m.name;
            }
          }
          if (parent.empty()) break;
          cur = parent;
        }
        if (!reached) err("node " + n.name + " does not reach the root");
      }
    }
  }

  // Scheme-specific tables.
  if (cfg.scheme == Scheme::FixedPriority) {
    if (cfg.priority_order.size() != cfg.threads.size()) {
      err("priority_order must list every thread exactly once");
    } else {
      std::set<std::string> seen;
      for (const auto& n : cfg.priority_order) {
        if (tnames.count(n) == 0) err("priority_order: unknown thread " + n);
        if (!seen.insert(n).second) err("priority_order: duplicate thread " + n);
      }
    }
  }
  if (cfg.scheme == Scheme::Tdma) {
    if (cfg.tdma_slots.empty()) err("tdma_slots must not be empty");
    for (const auto& n : cfg.tdma_slots) {
      if (tnames.count(n) == 0) err("tdma_slots: unknown thread " + n);
    }
  }
  if (cfg.scheme == Scheme::FixedWeight) {
    std::set<std::string> seen;
    for (const auto& w : cfg.weights) {
      if (tnames.count(w.first) == 0) err("weight: unknown thread " + w.first);
      if (!seen.insert(w.first).second) err("weight: duplicate thread " + w.first);
      if (w.second < 1) err("weight." + w.first + ": must be at least 1");
    }
    for (const auto& n : tnames) {
      if (seen.count(n) == 0) err("weight." + n + " is required for fixed_weight");
    }
  }

  return v;
}

}  // namespace qnoc
