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

#include "doctest.h"
#include "target.hpp"

using namespace qnoc;

TEST_CASE("target: a 4-word burst of 4-byte words is two 8-byte beats") {
  TargetModel t;
  const ServiceTiming s = target_service(t, 4, 4, 100);
  CHECK(s.occupancy == 2);
  CHECK(s.first_beat == 100);
  CHECK(s.last_beat == 101);
  CHECK(s.response_cycle == 102);  // one latency cycle after the last beat
  CHECK(t.busy_until == 102);
  CHECK_FALSE(t.idle(101));
  CHECK(t.idle(102));
}

TEST_CASE("target: an 8-word burst of 4-byte words occupies four beats") {
  TargetModel t;
  const ServiceTiming s = target_service(t, 8, 4, 0);
  CHECK(s.occupancy == 4);
  CHECK(s.last_beat == 3);
  CHECK(s.response_cycle == 4);
}

TEST_CASE("target: a single word still takes a whole beat") {
  TargetModel t;
  const ServiceTiming s = target_service(t, 1, 4, 50);
  CHECK(s.occupancy == 1);
  CHECK(s.last_beat == 50);
  CHECK(s.response_cycle == 51);
}

TEST_CASE("target: 8-byte words map one word to one beat") {
  TargetModel t;
  const ServiceTiming s = target_service(t, 4, 8, 10);
  CHECK(s.occupancy == 4);
  CHECK(s.response_cycle == 14);
}

TEST_CASE("target: back-to-back grants pack with no dead cycle") {
  TargetModel t;
  const ServiceTiming a = target_service(t, 4, 4, 100);
  CHECK(t.idle(a.last_beat + 1));
  const ServiceTiming b = target_service(t, 4, 4, a.last_beat + 1);
  CHECK(b.first_beat == 102);
  CHECK(b.last_beat == 103);
}

TEST_CASE("burst arithmetic: bytes and beats") {
  CHECK(burst_bytes(4, 4) == 16);
  CHECK(burst_bytes(8, 8) == 64);
  CHECK(burst_beats(1, 4) == 1);   // 4 bytes round up to one beat
  CHECK(burst_beats(2, 4) == 1);   // exactly one beat
  CHECK(burst_beats(3, 4) == 2);   // 12 bytes round up to two
  CHECK(burst_beats(8, 8) == 8);
}
