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

#ifndef QNOC_CREDIT_HPP
#define QNOC_CREDIT_HPP

#include <cstdint>

#include "types.hpp"

namespace qnoc {

// Credits are measured in target beats, held as signed fixed point so that
// fractional per-cycle allocations (e.g. an eighth of a beat) accumulate
// without drift. 24 fraction bits leave ~39 integer bits of headroom, far
// beyond any sane saturation limit.
inline constexpr int kCreditFracBits = 24;
inline constexpr std::int64_t kCreditOne = std::int64_t{1} << kCreditFracBits;

inline std::int64_t credits_from_beats(double beats) {
  return static_cast<std::int64_t>(beats * static_cast<double>(kCreditOne));
}

inline double credits_to_beats(std::int64_t raw) {
  return static_cast<double>(raw) / static_cast<double>(kCreditOne);
}

// Saturating per-thread credit counter. Earn a fraction of a beat every
// cycle, pay whole beats when a burst is granted; a negative balance parks
// the thread at best effort until the allocation refills it.
struct CreditCounter {
  std::int64_t count = 0;
  std::int64_t alloc_per_cycle = 0;  // fixed-point beats per cycle
  std::int64_t pos_limit = 0;        // saturation ceiling (>= 0)
  std::int64_t neg_limit = 0;        // saturation floor (<= 0)

  static CreditCounter make(double alloc_beats_per_cycle, double pos_beats,
                            double neg_beats) {
    CreditCounter c;
    c.alloc_per_cycle = credits_from_beats(alloc_beats_per_cycle);
    c.pos_limit = credits_from_beats(pos_beats);
    c.neg_limit = credits_from_beats(neg_beats);
    return c;
  }
};

inline CreditCounter credit_tick(CreditCounter c) {
  c.count += c.alloc_per_cycle;
  if (c.count > c.pos_limit) c.count = c.pos_limit;
  return c;
}

inline CreditCounter credit_debit(CreditCounter c, std::uint32_t beats) {
  c.count -= static_cast<std::int64_t>(beats) * kCreditOne;
  if (c.count < c.neg_limit) c.count = c.neg_limit;
  return c;
}

inline bool credit_demoted(const CreditCounter& c) { return c.count < 0; }

// A thread above its allocation is pushed down to best effort; it keeps its
// configured level otherwise. Best-effort threads have no counter at all.
inline QosLevel effective_level(QosLevel configured, bool demoted) {
  if (configured == QosLevel::BestEffort) return QosLevel::BestEffort;
  return demoted ? QosLevel::BestEffort : configured;
}

}  // namespace qnoc

#endif  // QNOC_CREDIT_HPP
