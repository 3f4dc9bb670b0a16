// Copyright 2026 The hse3s Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hse3s/learn/exploration.hpp"

#include <algorithm>
#include <stdexcept>

namespace hse3s::learn {

void ExplorationSchedule::Validate() const {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (!(start >= 0 && start <= 1) || !(floor >= 0 && floor <= start)) {
    throw std::invalid_argument("need 0 <= floor <= start <= 1");
  }
  if (floor_round < 0) throw std::invalid_argument("floor_round must be >= 0");
  if (greedy_tail < 0 || greedy_tail > rounds) {
    throw std::invalid_argument("greedy_tail must be in [0, rounds]");
  }
  if (!(place_target > 0)) throw std::invalid_argument("place_target must be > 0");
}

bool ExplorationSchedule::InGreedyTail(int round) const {
  return round >= rounds - greedy_tail;
}

double ExplorationSchedule::Grasp(int round) const {
  if (InGreedyTail(round)) return 0.0;
  if (round >= floor_round) return floor;
  const double f = static_cast<double>(round) / floor_round;
  return start + (floor - start) * f;
}

double ExplorationSchedule::Place(int round,
                                  std::int64_t place_experiences) const {
  if (InGreedyTail(round)) return 0.0;
  return std::max(floor, 1.0 - static_cast<double>(place_experiences) /
                                   place_target);
}

double EpsilonAt(const ExplorationSchedule& s, int round, Phase phase,
                 std::int64_t place_experiences) {
  return phase == Phase::kGrasp ? s.Grasp(round)
                                : s.Place(round, place_experiences);
}

}  // namespace hse3s::learn
