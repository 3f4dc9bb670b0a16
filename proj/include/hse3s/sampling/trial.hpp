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

#ifndef HSE3S_SAMPLING_TRIAL_HPP_
#define HSE3S_SAMPLING_TRIAL_HPP_

#include <limits>
#include <span>
#include <vector>

#include "hse3s/rng.hpp"
#include "hse3s/sampling/schedule.hpp"
#include "hse3s/world/env.hpp"

namespace hse3s::sampling {

struct Candidate {
  Action action{};  // offset within the level's half-ranges
  Pose gaze;        // resulting gaze
  double value = 0.0;
};

// Everything a value function may look at when scoring one level.
struct LevelContext {
  const world::EnvState& env;
  const world::WorldConfig& world;
  const GazeLevel& level;
  int level_index = 0;  // position in the schedule
  int time_step = 0;    // decision index over the episode (0..11)
  int n_levels = 0;

  bool last() const { return level_index + 1 == n_levels; }
};

class Scorer {
 public:
  virtual ~Scorer() = default;
  // Fills candidate.value for every candidate.
  virtual void Score(const LevelContext& ctx,
                     std::span<Candidate> candidates) = 0;
};

// n candidates for one level. Cloud-point mode picks observation points
// (expressed in the current gaze frame) and returns an empty list for an
// empty cloud; the other modes draw uniformly within the level's ranges.
std::vector<Candidate> SampleCandidates(const GazeLevel& level,
                                        const Pose& current_gaze,
                                        const geometry::PointCloud& observation,
                                        int n, Rng& rng);

// Index of the largest value; the lowest index wins ties.
std::size_t ArgMax(std::span<const Candidate> candidates);

// What a level saw and chose, kept for training.
struct LevelRecord {
  geometry::HeightMapImage i1;
  geometry::HeightMapImage i2;
  Candidate chosen;
};

struct TrialResult {
  std::vector<Candidate> chosen;
  Pose final_gaze;
  double final_value = -std::numeric_limits<double>::infinity();
  bool completed = false;
  world::Failure failure = world::Failure::kNone;
  std::vector<LevelRecord> records;  // filled when requested
  // Largest candidate value at the last level (detection-failure test).
  double final_best = -std::numeric_limits<double>::infinity();
};

struct TrialOptions {
  int n_samples = 64;
  double epsilon = 0.0;   // probability of a uniformly random choice
  int first_time_step = 0;
  bool record = false;
};

// Runs every level of the schedule on `env`: sample, score with the level's
// scorer, choose, then sense at the chosen gaze with the next level's extent
// (the last level keeps its own). `scorers` has one entry per level.
TrialResult RunTrial(world::EnvState& env, const world::WorldConfig& world,
                     const GazeSchedule& schedule,
                     std::span<Scorer* const> scorers,
                     const TrialOptions& options, Rng& rng);

// Greedy trials on copies of `env`, drawing from one rng stream in order;
// `env` ends up in the state of the trial with the largest final value
// (lowest trial index on ties; aborted trials count as -inf). Throws
// std::runtime_error if every trial found no candidates. `trial_values`
// receives each trial's final value if given.
TrialResult NTrialSelect(world::EnvState& env, const world::WorldConfig& world,
                         const GazeSchedule& schedule,
                         std::span<Scorer* const> scorers, int n_trials,
                         TrialOptions options, Rng& rng,
                         std::vector<double>* trial_values = nullptr);

}  // namespace hse3s::sampling

#endif  // HSE3S_SAMPLING_TRIAL_HPP_
