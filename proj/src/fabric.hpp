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

#ifndef QNOC_FABRIC_HPP
#define QNOC_FABRIC_HPP

#include <array>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "arbiters.hpp"
#include "config.hpp"
#include "types.hpp"

namespace qnoc {

// Bounded per-thread buffer. Threads never share a FIFO, so one thread's
// backlog cannot block another's requests anywhere in the fabric.
struct ThreadFifo {
  std::deque<Request> q;
  std::uint32_t capacity = 4;

  bool full() const { return q.size() >= capacity; }
  bool empty() const { return q.empty(); }
};

// The target edge's per-thread input queues; filled by the root node, drained
// by the edge arbiter.
struct EdgeQueues {
  std::vector<ThreadFifo> queues;  // indexed by thread id

  std::uint64_t total_queued() const {
    std::uint64_t n = 0;
    for (const auto& f : queues) n += f.q.size();
    return n;
  }
};

// One switch in the request tree. Every thread routed through the node gets
// its own FIFO; the output link moves at most one request per cycle toward
// the parent (or the edge, at the root).
struct FabricNode {
  std::string name;
  int parent = -1;  // index into Fabric::nodes, -1 at the root
  std::vector<std::uint32_t> threads;   // ascending thread ids routed through
  std::vector<ThreadFifo> fifos;        // parallel to threads
  std::vector<bool> boundary_spent;     // parallel: head's marker already honored here
  // One epoch instance per service level, cascaded high to low, so a closed
  // branch at one level never holds a lower level's epoch open. The boundary
  // flags are shared: a marker is honored at most once at this node.
  std::array<EpochArbiterState, 3> epoch;

  int lane(std::uint32_t thread) const {
    for (std::size_t i = 0; i < threads.size(); ++i) {
      if (threads[i] == thread) return static_cast<int>(i);
    }
    return -1;
  }
};

// Request-side interconnect: a tree of FabricNodes feeding the edge. Nodes
// always arbitrate with strict level precedence and the epoch scheme within
// a level, regardless of the scheme configured at the edge.
class Fabric {
 public:
  // cfg must have passed validate().
  static Fabric build(const ScenarioConfig& cfg);

  bool can_accept(std::uint32_t thread) const;
  void inject(const Request& r);

  // Move up to one request per node toward its parent or the edge. Parents
  // are evaluated before children, so a request takes at least one cycle per
  // hop. `levels` holds the effective per-thread levels as seen through the
  // sideband (already delayed by the caller).
  void step(Cycle now, const std::vector<QosLevel>& levels, EdgeQueues& edge);

  // End-of-cycle epoch turnover at every node, one decision per level.
  void advance_epochs(const std::vector<QosLevel>& levels);

  std::uint64_t queued_requests() const;

  const std::vector<FabricNode>& nodes() const { return nodes_; }
  int leaf_of_thread(std::uint32_t thread) const { return leaf_of_thread_[thread]; }

 private:
  std::vector<FabricNode> nodes_;
  std::vector<int> eval_order_;       // parents before children
  std::vector<int> leaf_of_thread_;   // thread id -> injection node
  std::uint32_t queue_depth_ = 4;
};

}  // namespace qnoc

#endif  // QNOC_FABRIC_HPP
