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

#ifndef QNOC_PRESETS_HPP
#define QNOC_PRESETS_HPP

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace qnoc {

// Canned scenarios: the four-initiator system (CPU, MPEG, VID, GEN sharing
// one memory target through a two-switch tree) under three arbitration
// schemes, each with the CPU in a low or high miss-rate phase.
//
//   priority-low / priority-high : fixed priority CPU > MPEG > VID > GEN
//   tdma-low / tdma-high         : 8-slot wheel M,C,M,V,M,C,M,G
//   qos-low / qos-high           : epoch + credit scheme; CPU priority with
//                                  560 MB/s, MPEG 800 MB/s, VID 240 MB/s
//                                  guaranteed, GEN best effort
struct PresetInfo {
  std::string name;
  std::string description;
};

const std::vector<PresetInfo>& preset_list();

std::optional<ScenarioConfig> make_preset(const std::string& name);

}  // namespace qnoc

#endif  // QNOC_PRESETS_HPP
