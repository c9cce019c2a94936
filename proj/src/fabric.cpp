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

#include "fabric.hpp"

#include <algorithm>

namespace qnoc {

namespace {

constexpr QosLevel kLevelsHighFirst[] = {QosLevel::Priority, QosLevel::Bandwidth,
                                         QosLevel::BestEffort};

}  // namespace

Fabric Fabric::build(const ScenarioConfig& cfg) {
  Fabric f;
  f.queue_depth_ = cfg.queue_depth;
  f.leaf_of_thread_.assign(cfg.initiators.size(), -1);

  f.nodes_.resize(cfg.nodes.size());
  for (std::size_t n = 0; n < cfg.nodes.size(); ++n) {
    f.nodes_[n].name = cfg.nodes[n].name;
  }

  // Wire parents and find each thread's injection point.
  for (std::size_t n = 0; n < cfg.nodes.size(); ++n) {
    for (const auto& in : cfg.nodes[n].inputs) {
      const int child = cfg.node_index(in);
      if (child >= 0) {
        f.nodes_[child].parent = static_cast<int>(n);
        continue;
      }
      const int thread = cfg.initiator_index(in);
      f.leaf_of_thread_[thread] = static_cast<int>(n);
    }
  }

  // A thread occupies a lane in its leaf node and every ancestor.
  for (std::size_t t = 0; t < cfg.initiators.size(); ++t) {
    for (int n = f.leaf_of_thread_[t]; n >= 0; n = f.nodes_[n].parent) {
      f.nodes_[n].threads.push_back(static_cast<std::uint32_t>(t));
    }
  }
  for (auto& node : f.nodes_) {
    std::sort(node.threads.begin(), node.threads.end());
    node.fifos.assign(node.threads.size(), ThreadFifo{{}, cfg.queue_depth});
    node.boundary_spent.assign(node.threads.size(), false);
    for (auto& st : node.epoch) st = EpochArbiterState::make(node.threads);
  }

  // Evaluation order: root, then children of already-placed nodes.
  f.eval_order_.clear();
  for (std::size_t n = 0; n < f.nodes_.size(); ++n) {
    if (f.nodes_[n].parent < 0) f.eval_order_.push_back(static_cast<int>(n));
  }
  for (std::size_t i = 0; i < f.eval_order_.size(); ++i) {
    for (std::size_t n = 0; n < f.nodes_.size(); ++n) {
      if (f.nodes_[n].parent == f.eval_order_[i])
        f.eval_order_.push_back(static_cast<int>(n));
    }
  }
  return f;
}

bool Fabric::can_accept(std::uint32_t thread) const {
  const FabricNode& node = nodes_[leaf_of_thread_[thread]];
  return !node.fifos[node.lane(thread)].full();
}

void Fabric::inject(const Request& r) {
  FabricNode& node = nodes_[leaf_of_thread_[r.thread]];
  node.fifos[node.lane(r.thread)].q.push_back(r);
}

void Fabric::step(Cycle now, const std::vector<QosLevel>& levels, EdgeQueues& edge) {
  for (int idx : eval_order_) {
    FabricNode& node = nodes_[idx];

    // A lane is eligible when it has a head that arrived before this cycle and
    // the downstream buffer for its thread has room.  Gating on the arrival
    // cycle makes every hop cost at least one cycle, the injection hop
    // included.
    const auto lane_open = [&](std::size_t i) {
      if (node.fifos[i].empty()) return false;
      if (node.fifos[i].q.front().issue_cycle >= now) return false;
      const std::uint32_t t = node.threads[i];
      if (node.parent >= 0) {
        const FabricNode& p = nodes_[node.parent];
        return !p.fifos[p.lane(t)].full();
      }
      return !edge.queues[t].full();
    };

    // Strict precedence between levels, epoch fairness within one: try the
    // levels from high to low and take the first that yields a winner, so a
    // closed-out high branch never wastes the link.
    int chosen = -1;
    for (QosLevel level : kLevelsHighFirst) {
      std::vector<BranchView> views;
      views.reserve(node.threads.size());
      for (std::size_t i = 0; i < node.threads.size(); ++i) {
        if (!lane_open(i) || levels[node.threads[i]] != level) continue;
        BranchView v;
        v.branch_id = node.threads[i];
        v.has_pending = true;
        v.head_marked = node.fifos[i].q.front().epoch_marker && !node.boundary_spent[i];
        views.push_back(v);
      }
      if (views.empty()) continue;
      auto r = epoch_pick(views, node.epoch[static_cast<int>(level)]);
      if (r.winner) {
        node.epoch[static_cast<int>(level)] = std::move(r.state);
        chosen = node.lane(*r.winner);
        break;
      }
    }
    if (chosen < 0) continue;

    Request req = node.fifos[chosen].q.front();
    node.fifos[chosen].q.pop_front();
    node.boundary_spent[chosen] = false;  // a new head speaks for itself
    if (node.parent >= 0) {
      FabricNode& p = nodes_[node.parent];
      p.fifos[p.lane(req.thread)].q.push_back(req);
    } else {
      req.edge_arrival = now;
      edge.queues[req.thread].q.push_back(req);
    }
  }
}

void Fabric::advance_epochs(const std::vector<QosLevel>& levels) {
  for (auto& node : nodes_) {
    for (QosLevel level : kLevelsHighFirst) {
      // The turnover decision looks at true occupancy: backpressure gates who
      // wins a cycle, not when the epoch is over.
      std::vector<BranchView> views;
      for (std::size_t i = 0; i < node.threads.size(); ++i) {
        if (levels[node.threads[i]] != level) continue;
        BranchView v;
        v.branch_id = node.threads[i];
        v.has_pending = !node.fifos[i].empty();
        v.head_marked = v.has_pending && node.fifos[i].q.front().epoch_marker &&
                        !node.boundary_spent[i];
        views.push_back(v);
      }
      auto r = epoch_advance(views, node.epoch[static_cast<int>(level)]);
      if (!r.advanced) continue;
      node.epoch[static_cast<int>(level)] = std::move(r.state);
      // Honor the boundary on every head that voted for the turnover. The
      // flag on the request itself stays, so arbitration points downstream
      // still see the epoch boundary pass by.
      for (const auto& v : views) {
        if (v.has_pending && v.head_marked)
          node.boundary_spent[node.lane(v.branch_id)] = true;
      }
    }
  }
}

std::uint64_t Fabric::queued_requests() const {
  std::uint64_t n = 0;
  for (const auto& node : nodes_) {
    for (const auto& f : node.fifos) n += f.q.size();
  }
  return n;
}

}  // namespace qnoc
