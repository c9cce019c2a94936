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

#include "arbiters.hpp"

#include <algorithm>

namespace qnoc {

namespace {

const BranchView* find_view(const std::vector<BranchView>& views, std::uint32_t id) {
  for (const auto& v : views) {
    if (v.branch_id == id) return &v;
  }
  return nullptr;
}

bool pending(const std::vector<BranchView>& views, std::uint32_t id) {
  const BranchView* v = find_view(views, id);
  return v != nullptr && v->has_pending;
}

// Ascending branch ids present in the views; defines the cyclic order used by
// round robin and fixed weight.
std::vector<std::uint32_t> sorted_ids(const std::vector<BranchView>& views) {
  std::vector<std::uint32_t> ids;
  ids.reserve(views.size());
  for (const auto& v : views) ids.push_back(v.branch_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

Pick fixed_priority_pick(const std::vector<BranchView>& views,
                         const std::vector<std::uint32_t>& order) {
  for (std::uint32_t id : order) {
    if (pending(views, id)) return id;
  }
  return std::nullopt;
}

RoundRobinResult round_robin_pick(const std::vector<BranchView>& views,
                                  const RoundRobinState& state) {
  const std::vector<std::uint32_t> ids = sorted_ids(views);
  if (ids.empty()) return {std::nullopt, state};

  // Start scanning just past the previous winner; an unknown or unset
  // last_winner means the scan starts at the lowest id.
  std::size_t start = 0;
  if (state.last_winner) {
    auto it = std::upper_bound(ids.begin(), ids.end(), *state.last_winner);
    start = static_cast<std::size_t>(it - ids.begin()) % ids.size();
  }
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const std::uint32_t id = ids[(start + k) % ids.size()];
    if (pending(views, id)) return {id, RoundRobinState{id}};
  }
  return {std::nullopt, state};
}

TdmaResult tdma_pick(const std::vector<BranchView>& views, const TdmaWheel& wheel) {
  if (wheel.slots.empty()) return {std::nullopt, wheel};
  TdmaWheel next = wheel;
  const std::uint32_t owner = wheel.slots[wheel.index % wheel.slots.size()];
  next.index = (wheel.index + 1) % wheel.slots.size();
  if (pending(views, owner)) return {owner, next};
  return {std::nullopt, next};  // slot wasted; the wheel does not wait
}

FixedWeightResult fixed_weight_pick(const std::vector<BranchView>& views,
                                    const FixedWeightState& state) {
  FixedWeightState next = state;
  if (next.weights.empty()) return {std::nullopt, next};

  // Current holder keeps the grant while it has budget and work.
  if (next.holder && next.grants_left > 0 && pending(views, *next.holder)) {
    next.grants_left -= 1;
    return {*next.holder, next};
  }

  // Rotate to the next pending branch in weight-table order.
  std::size_t start = 0;
  if (next.holder) {
    for (std::size_t i = 0; i < next.weights.size(); ++i) {
      if (next.weights[i].branch_id == *next.holder) {
        start = i + 1;
        break;
      }
    }
  }
  for (std::size_t k = 0; k < next.weights.size(); ++k) {
    const WeightEntry& e = next.weights[(start + k) % next.weights.size()];
    if (pending(views, e.branch_id)) {
      next.holder = e.branch_id;
      next.grants_left = e.weight - 1;  // this pick consumes one grant
      return {e.branch_id, next};
    }
  }
  // Nothing pending: the rotation must not move, or an idle cycle would reset
  // the wheel to the table head and skew long-run shares.
  return {std::nullopt, state};
}

EpochArbiterState EpochArbiterState::make(const std::vector<std::uint32_t>& branch_ids) {
  EpochArbiterState s;
  s.lrs_order = branch_ids;
  std::sort(s.lrs_order.begin(), s.lrs_order.end());
  return s;
}

EpochPickResult epoch_pick(const std::vector<BranchView>& views,
                           const EpochArbiterState& state) {
  EpochArbiterState next = state;

  // A marked head announces the next epoch: the branch has exhausted its
  // share of the current one and closes.
  for (const auto& v : views) {
    if (v.has_pending && v.head_marked) next.closed.insert(v.branch_id);
  }

  for (auto it = next.lrs_order.begin(); it != next.lrs_order.end(); ++it) {
    const std::uint32_t id = *it;
    if (next.closed.count(id) != 0) continue;
    const BranchView* v = find_view(views, id);
    if (v == nullptr || !v->has_pending || v->head_marked) continue;
    // Winner moves to the most-recently-served end.
    next.lrs_order.erase(it);
    next.lrs_order.push_back(id);
    return {id, next};
  }
  return {std::nullopt, next};
}

EpochAdvanceResult epoch_advance(const std::vector<BranchView>& views,
                                 const EpochArbiterState& state) {
  bool any_pending = false;
  for (const auto& v : views) {
    if (!v.has_pending) continue;
    any_pending = true;
    if (!v.head_marked) return {false, state};
  }
  if (!any_pending) return {false, state};  // an all-idle point has no epoch to finish

  EpochArbiterState next = state;
  next.current_epoch += 1;
  next.closed.clear();
  // The marked heads become the opening grants of the new epoch; the caller
  // owns the queues and strips their markers.
  return {true, next};
}

}  // namespace qnoc
