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

#ifndef QNOC_TYPES_HPP
#define QNOC_TYPES_HPP

#include <cstdint>
#include <string>

namespace qnoc {

// One interconnect clock tick. The interconnect and the shared target run in
// the same 200 MHz domain; wall-clock seconds = cycles / (clock_mhz * 1e6).
using Cycle = std::uint64_t;

// Width of one target-interface transfer. The target moves at most one beat
// per cycle, so peak bandwidth = kBeatBytes * clock.
inline constexpr std::uint32_t kBeatBytes = 8;

enum class ReqKind : std::uint8_t { Read = 0, Write = 1 };

// Service classes, highest to lowest: priority > bandwidth > best_effort.
// The underlying values are ordered so that operator> on the enum matches.
enum class QosLevel : std::uint8_t { BestEffort = 0, Bandwidth = 1, Priority = 2 };

inline const char* to_string(QosLevel level) {
  switch (level) {
    case QosLevel::BestEffort: return "best_effort";
    case QosLevel::Bandwidth: return "bandwidth";
    case QosLevel::Priority: return "priority";
  }
  return "?";
}

inline const char* to_string(ReqKind kind) {
  return kind == ReqKind::Read ? "read" : "write";
}

// One whole-burst read or write transaction. Requests are atomic units of
// arbitration; data beats are derived from burst_words and the scenario's
// word width.
struct Request {
  std::uint16_t initiator = 0;  // index into the scenario's initiator table
  std::uint16_t thread = 0;     // thread index (per-initiator threads: == initiator)
  ReqKind kind = ReqKind::Read;
  std::uint32_t burst_words = 1;
  bool epoch_marker = false;  // set at the interconnect boundary, see insert_marker
  std::uint64_t seq_no = 0;   // per-initiator emission sequence
  Cycle issue_cycle = 0;      // generator emission time
  Cycle edge_arrival = 0;     // set when the request enters the target edge queue
};

inline std::uint32_t burst_bytes(std::uint32_t burst_words, std::uint32_t word_bytes) {
  return burst_words * word_bytes;
}

// Target occupancy of a burst in beats (= cycles at one beat per cycle).
inline std::uint32_t burst_beats(std::uint32_t burst_words, std::uint32_t word_bytes) {
  const std::uint32_t bytes = burst_bytes(burst_words, word_bytes);
  return (bytes + kBeatBytes - 1) / kBeatBytes;
}

// Epoch boundary marker rule: requests are grouped into epochs of n per
// initiator; the marker rides the first request of each epoch after the
// initial one (seq 0..n-1 form epoch 0), so a marked head always announces
// the NEXT epoch and the system never starts all-blocked.
inline bool boundary_marker(std::uint64_t seq_no, std::uint64_t epoch_size) {
  return seq_no > 0 && epoch_size > 0 && seq_no % epoch_size == 0;
}

}  // namespace qnoc

#endif  // QNOC_TYPES_HPP
