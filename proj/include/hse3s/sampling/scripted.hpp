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

#ifndef HSE3S_SAMPLING_SCRIPTED_HPP_
#define HSE3S_SAMPLING_SCRIPTED_HPP_

#include <cstdint>
#include <vector>

#include "hse3s/sampling/trial.hpp"

namespace hse3s::sampling {

// Hand-written value functions that read ground truth from the environment.
// They stand in for trained networks in tests and baselines.

class ConstantScorer : public Scorer {
 public:
  explicit ConstantScorer(double value = 0.0) : value_(value) {}
  void Score(const LevelContext& ctx, std::span<Candidate> c) override;

 private:
  double value_;
};

// Distance between gazes: translation plus rot_weight times rotation angle.
double GazeDistance(const Pose& a, const Pose& b, double rot_weight);

// Negative distance to the nearest target.
class TargetScorer : public Scorer {
 public:
  TargetScorer(std::vector<Pose> targets, double rot_weight = 0.05)
      : targets_(std::move(targets)), rot_weight_(rot_weight) {}
  void Score(const LevelContext& ctx, std::span<Candidate> c) override;

 private:
  std::vector<Pose> targets_;
  double rot_weight_;
};

// Grasp poses that clamp a block across a pair of side faces from above,
// or an upright cylinder body across its axis (several yaws).
std::vector<Pose> IdealGraspPoses(const world::EnvState& env,
                                  const world::WorldConfig& cfg);

// Gripper poses that release the held object centered over a support
// (another block, or a coaster for bottles) just above its top.
std::vector<Pose> IdealPlacePoses(const world::EnvState& env,
                                  const world::WorldConfig& cfg);

// Steers toward ideal grasp or place poses at every level but the last,
// where it scores the true reward of the candidate pose. `noise` adds a
// deterministic pseudo-random perturbation in [-noise, noise] keyed on the
// candidate and `seed`.
class OracleScorer : public Scorer {
 public:
  explicit OracleScorer(double noise = 0.0, std::uint64_t seed = 0,
                        double rot_weight = 0.05)
      : noise_(noise), seed_(seed), rot_weight_(rot_weight) {}
  void Score(const LevelContext& ctx, std::span<Candidate> c) override;

 private:
  double noise_;
  std::uint64_t seed_;
  double rot_weight_;
};

// Deterministic noise in [-1, 1) keyed on a pose and a seed.
double PoseNoise(const Pose& pose, std::uint64_t seed);

// True reward of executing the current phase's move-effect at `gaze`,
// without touching the state.
double RewardAt(const world::EnvState& env, const world::WorldConfig& cfg,
                const Pose& gaze);

}  // namespace hse3s::sampling

#endif  // HSE3S_SAMPLING_SCRIPTED_HPP_
