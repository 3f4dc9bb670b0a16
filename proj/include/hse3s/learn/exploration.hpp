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

#ifndef HSE3S_LEARN_EXPLORATION_HPP_
#define HSE3S_LEARN_EXPLORATION_HPP_

#include <cstdint>

namespace hse3s::learn {

enum class Phase { kGrasp, kPlace };

// Rounds are numbered from 0. Grasp epsilon falls linearly from `start` at
// round 0 to `floor` at round `floor_round`, then stays there; the last
// `greedy_tail` rounds of the horizon are fully greedy. Place epsilon is
// max(floor, 1 - place_experiences / place_target), also 0 in the tail.
struct ExplorationSchedule {
  int rounds = 30;
  double start = 1.0;
  double floor = 0.05;
  int floor_round = 24;
  int greedy_tail = 5;
  double place_target = 5000.0;

  // Throws std::invalid_argument on inconsistent settings.
  void Validate() const;
  bool InGreedyTail(int round) const;
  double Grasp(int round) const;
  double Place(int round, std::int64_t place_experiences) const;
};

double EpsilonAt(const ExplorationSchedule& s, int round, Phase phase,
                 std::int64_t place_experiences = 0);

}  // namespace hse3s::learn

#endif  // HSE3S_LEARN_EXPLORATION_HPP_
