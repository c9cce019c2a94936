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

#ifndef QNOC_ARBITERS_HPP
#define QNOC_ARBITERS_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "types.hpp"

namespace qnoc {

// Snapshot of one input branch as seen by an arbitration point. Arbiters are
// pure: they look at views plus their own state and name a winner; moving
// requests is the caller's job.
struct BranchView {
  std::uint32_t branch_id = 0;
  bool has_pending = false;
  bool head_marked = false;  // head request carries the epoch boundary marker
};

using Pick = std::optional<std::uint32_t>;

// ---------------------------------------------------------------------------
// Fixed priority: first pending branch in the configured order wins. Branches
// absent from `order` can never win.
Pick fixed_priority_pick(const std::vector<BranchView>& views,
                         const std::vector<std::uint32_t>& order);

// ---------------------------------------------------------------------------
// Round robin: first pending branch strictly after the previous winner in
// cyclic ascending branch-id order.
struct RoundRobinState {
  std::optional<std::uint32_t> last_winner;
};

struct RoundRobinResult {
  Pick winner;
  RoundRobinState state;
};

RoundRobinResult round_robin_pick(const std::vector<BranchView>& views,
                                  const RoundRobinState& state);

// ---------------------------------------------------------------------------
// TDMA: a fixed wheel of slot owners, one slot per cycle. The slot's owner is
// served if pending, otherwise the slot is wasted; the wheel index always
// advances by one. Strict and non-preemptive.
struct TdmaWheel {
  std::vector<std::uint32_t> slots;  // branch ids, one per slot
  std::size_t index = 0;
};

struct TdmaResult {
  Pick winner;
  TdmaWheel wheel;
};

TdmaResult tdma_pick(const std::vector<BranchView>& views, const TdmaWheel& wheel);

// ---------------------------------------------------------------------------
// Fixed weight: the current holder keeps winning until its grant budget is
// spent, then the next pending branch (cyclic order) becomes holder with a
// fresh budget equal to its weight. A holder that goes idle forfeits the
// remainder of its budget.
struct WeightEntry {
  std::uint32_t branch_id = 0;
  std::uint32_t weight = 1;
};

struct FixedWeightState {
  std::vector<WeightEntry> weights;  // ascending branch_id
  std::optional<std::uint32_t> holder;
  std::uint32_t grants_left = 0;
};

struct FixedWeightResult {
  Pick winner;
  FixedWeightState state;
};

FixedWeightResult fixed_weight_pick(const std::vector<BranchView>& views,
                                    const FixedWeightState& state);

// ---------------------------------------------------------------------------
// Epoch arbitration. Within an epoch every branch may be served up to its
// per-branch quantum (markers are inserted every n-th request at the
// boundary); a marked head means the branch has used its quantum and sits out
// until everyone else catches up. Ties between eligible branches go to the
// least recently served.
struct EpochArbiterState {
  std::uint64_t current_epoch = 0;
  std::set<std::uint32_t> closed;         // branches done with the current epoch
  std::vector<std::uint32_t> lrs_order;   // least recently served first

  static EpochArbiterState make(const std::vector<std::uint32_t>& branch_ids);
};

struct EpochPickResult {
  Pick winner;
  EpochArbiterState state;
};

// Serve one request: any pending marked head closes its branch; the winner is
// the least recently served branch that is pending, unmarked and not closed.
EpochPickResult epoch_pick(const std::vector<BranchView>& views,
                           const EpochArbiterState& state);

struct EpochAdvanceResult {
  bool advanced = false;
  EpochArbiterState state;
};

// The epoch turns over once every pending branch shows a marked head (idle
// branches don't hold it open, but somebody must be pending). On advance the
// closed set clears and the marked heads become the first grants of the new
// epoch; the caller unmarks them.
EpochAdvanceResult epoch_advance(const std::vector<BranchView>& views,
                                 const EpochArbiterState& state);

}  // namespace qnoc

#endif  // QNOC_ARBITERS_HPP
