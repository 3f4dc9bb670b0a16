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

#ifndef HSE3S_LEARN_EPISODE_HPP_
#define HSE3S_LEARN_EPISODE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "hse3s/sampling/trial.hpp"
#include "hse3s/world/env.hpp"

namespace hse3s::learn {

// Episode step numbering: 0-5 grasp senses, 6 close, 7-12 place senses,
// 13 open. Sense steps map to value networks 0-11.
inline constexpr int kCloseStep = 6;
inline constexpr int kOpenStep = 13;
int DecisionIndex(int time_step);  // -1 for move-effect steps

struct Transition {
  int time_step = 0;
  int decision = -1;
  geometry::HeightMapImage i1;
  geometry::HeightMapImage i2;
  sampling::Action action{};  // zero for move-effects
  double reward = 0.0;
  std::int64_t episode = 0;
};

struct EpisodeSetup {
  world::WorldConfig world;
  sampling::GazeSchedule schedule = sampling::DefaultSchedule();
  int n_samples = 64;
  int n_trials = 1;       // > 1 selects greedily among independent trials
  bool record = true;     // keep per-step images
};

struct EpisodeResult {
  std::vector<Transition> transitions;
  double ret = 0.0;
  double grasp_reward = 0.0;
  double place_reward = 0.0;
  bool grasp_attempted = false;  // reached the close step
  bool antipodal = false;
  bool collision_free = false;
  bool grasped = false;          // object attached
  bool place_attempted = false;
  std::optional<world::PlaceOutcome> place;
  bool degenerate = false;
  world::Failure failure = world::Failure::kNone;
  double grasp_best = -std::numeric_limits<double>::infinity();
  double place_best = -std::numeric_limits<double>::infinity();
};

// Spawns the scene for `env_seed`, runs the grasp hierarchy, closes, and if
// something was grasped runs the place hierarchy and opens. `grasp` and
// `place` hold one scorer per schedule level.
EpisodeResult RunEpisode(const EpisodeSetup& setup, std::uint64_t env_seed,
                         std::span<sampling::Scorer* const> grasp,
                         std::span<sampling::Scorer* const> place,
                         double eps_grasp, double eps_place, Rng& rng,
                         std::int64_t episode_id = 0);

// Same, starting from an already spawned state.
EpisodeResult RunEpisodeFrom(const EpisodeSetup& setup, world::EnvState env,
                             std::span<sampling::Scorer* const> grasp,
                             std::span<sampling::Scorer* const> place,
                             double eps_grasp, double eps_place, Rng& rng,
                             std::int64_t episode_id = 0);

}  // namespace hse3s::learn

#endif  // HSE3S_LEARN_EPISODE_HPP_
