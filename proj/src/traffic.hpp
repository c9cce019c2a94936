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

#ifndef QNOC_TRAFFIC_HPP
#define QNOC_TRAFFIC_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "config.hpp"
#include "types.hpp"

namespace qnoc {

// Emission requests carry only kind and size here; the engine stamps
// initiator, thread, sequence number and marker at the boundary.
struct Emission {
  ReqKind kind = ReqKind::Read;
  std::uint32_t burst_words = 1;
};

// Deterministic draws on top of mt19937_64. The distributions are hand
// rolled (modulo, inversion) so results are identical across standard
// library implementations; std::*_distribution makes no such promise.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double unit() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return unit() < p; }

  std::uint32_t uniform_int(std::uint32_t lo, std::uint32_t hi) {  // inclusive
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::uint32_t>(gen_() % span);
  }

  // Geometric on {1, 2, ...} with the given mean (>= 1), by inversion.
  std::uint64_t geometric(double mean) {
    if (mean <= 1.0) return 1;
    const double p = 1.0 / mean;
    const double u = unit();
    const double k = std::ceil(std::log1p(-u) / std::log1p(-p));
    if (k < 1.0) return 1;
    return static_cast<std::uint64_t>(k);
  }

 private:
  std::mt19937_64 gen_;
};

// Stable per-generator seeding: global seed, initiator name and the
// per-initiator salt are folded together, so adding or reordering
// initiators never disturbs another generator's stream.
std::uint64_t derive_seed(std::uint64_t global_seed, const std::string& name,
                          std::uint64_t salt);

struct GenContext {
  std::uint64_t source_backlog = 0;  // requests emitted but not yet injected
};

class Generator {
 public:
  virtual ~Generator() = default;
  virtual void step(Cycle now, const GenContext& ctx, std::vector<Emission>& out) = 0;
  virtual void on_read_response(Cycle now) { (void)now; }
};

// One row of a request trace. Files are CSV with a "cycle,initiator,kind,words"
// header; rows must be cycle-sorted per initiator.
struct TraceRecord {
  Cycle cycle = 0;
  std::string initiator;
  ReqKind kind = ReqKind::Read;
  std::uint32_t words = 1;
};

struct TraceLoadResult {
  bool ok = false;
  std::vector<TraceRecord> records;
  std::string error;
};

TraceLoadResult load_trace(const std::string& path);
std::string trace_to_csv(const std::vector<TraceRecord>& records);

// Factory; cfg must be validated. The returned generator owns its rng.
std::unique_ptr<Generator> make_generator(const ScenarioConfig& cfg,
                                          const InitiatorSpec& spec);

}  // namespace qnoc

#endif  // QNOC_TRAFFIC_HPP
