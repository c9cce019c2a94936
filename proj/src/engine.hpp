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

#ifndef QNOC_ENGINE_HPP
#define QNOC_ENGINE_HPP

#include <string>
#include <vector>

#include "config.hpp"
#include "metrics.hpp"
#include "traffic.hpp"

namespace qnoc {

struct RunOptions {
  // When set, every emission is appended as a trace record (all cycles,
  // including warmup), suitable for later replay.
  std::vector<TraceRecord>* emission_trace = nullptr;
};

struct RunResult {
  bool ok = false;
  RunReport report;
  std::string error;
};

// Run one scenario start to finish. The config must already have passed
// validate(); runtime failures (unreadable trace files) come back as errors.
//
// Cycle phases, in order: deliver due read responses; generators emit and
// fresh requests are stamped and injected at the boundary; credit tick; edge
// data path (grant/beat/completion); fabric forwarding, root first; epoch
// turnover everywhere; metrics sampling.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

}  // namespace qnoc

#endif  // QNOC_ENGINE_HPP
