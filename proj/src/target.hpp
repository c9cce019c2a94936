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

#ifndef QNOC_TARGET_HPP
#define QNOC_TARGET_HPP

#include <cstdint>

#include "types.hpp"

namespace qnoc {

// The shared memory target: an 8-byte interface clocked with the fabric,
// one beat per cycle, fixed access latency. A granted burst occupies the
// data path for its full beat count.
struct TargetModel {
  std::uint32_t latency_cycles = 1;
  Cycle busy_until = 0;  // first cycle the data path is free again

  bool idle(Cycle now) const { return now >= busy_until; }
};

struct ServiceTiming {
  std::uint32_t occupancy = 0;  // beats == data-path cycles
  Cycle first_beat = 0;
  Cycle last_beat = 0;
  Cycle response_cycle = 0;  // reads: when the last data beat returns
};

// Commit a granted burst starting at `grant`. The caller checks idle()
// first; back-to-back grants pack with no dead cycles.
inline ServiceTiming target_service(TargetModel& t, std::uint32_t burst_words,
                                    std::uint32_t word_bytes, Cycle grant) {
  ServiceTiming s;
  s.occupancy = burst_beats(burst_words, word_bytes);
  s.first_beat = grant;
  s.last_beat = grant + s.occupancy - 1;
  s.response_cycle = s.last_beat + t.latency_cycles;
  t.busy_until = grant + s.occupancy;
  return s;
}

}  // namespace qnoc

#endif  // QNOC_TARGET_HPP
