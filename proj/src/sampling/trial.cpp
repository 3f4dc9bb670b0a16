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

#include "hse3s/sampling/trial.hpp"

#include <stdexcept>

namespace hse3s::sampling {

std::vector<Candidate> SampleCandidates(const GazeLevel& level,
                                        const Pose& current_gaze,
                                        const geometry::PointCloud& observation,
                                        int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  std::vector<Candidate> out;
  if (level.mode == LevelMode::kCloudPoint && observation.empty()) return out;
  out.reserve(n);
  const Action& d = level.range;
  for (int k = 0; k < n; ++k) {
    Candidate c;
    Pose offset;
    switch (level.mode) {
      case LevelMode::kCloudPoint: {
        const Vec3& p = observation.points[UniformIndex(rng, observation.size())];
        c.action = {p.x(), p.y(), p.z(), 0, 0, 0};
        offset = Pose::Translation(p);
        break;
      }
      case LevelMode::kFreePosition: {
        for (int i = 0; i < 3; ++i) c.action[i] = Uniform(rng, -d[i], d[i]);
        offset = Pose::Translation(c.action[0], c.action[1], c.action[2]);
        break;
      }
      case LevelMode::kRotationZ:
        c.action[5] = Uniform(rng, -d[5], d[5]);
        offset = Pose::RotZ(c.action[5]);
        break;
      case LevelMode::kRotationY:
        c.action[4] = Uniform(rng, -d[4], d[4]);
        offset = Pose::RotY(c.action[4]);
        break;
      case LevelMode::kAxisOffset: {
        int axes[3];
        int count = 0;
        for (int i = 0; i < 3; ++i) {
          if (d[i] > 0) axes[count++] = i;
        }
        if (count == 0) break;
        const int axis = axes[UniformIndex(rng, count)];
        c.action[axis] = Uniform(rng, -d[axis], d[axis]);
        offset = Pose::Translation(c.action[0], c.action[1], c.action[2]);
        break;
      }
    }
    c.gaze = current_gaze * offset;
    out.push_back(c);
  }
  return out;
}

std::size_t ArgMax(std::span<const Candidate> candidates) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].value > candidates[best].value) best = i;
  }
  return best;
}

TrialResult RunTrial(world::EnvState& env, const world::WorldConfig& world,
                     const GazeSchedule& schedule,
                     std::span<Scorer* const> scorers,
                     const TrialOptions& options, Rng& rng) {
  if (scorers.size() != schedule.size()) {
    throw std::invalid_argument("need one scorer per schedule level");
  }
  TrialResult result;
  const std::size_t n_levels = schedule.size();
  for (std::size_t i = 0; i < n_levels; ++i) {
    const GazeLevel& level = schedule[i];
    geometry::PointCloud observation;
    if (level.mode == LevelMode::kCloudPoint) {
      observation = geometry::Crop(env.cloud, env.gaze, env.extent);
    }
    std::vector<Candidate> candidates = SampleCandidates(
        level, env.gaze, observation, options.n_samples, rng);
    if (candidates.empty()) {
      result.failure = world::Failure::kEmptyCandidates;
      env.failure = result.failure;
      return result;
    }
    const LevelContext ctx{env, world, level, static_cast<int>(i),
                           options.first_time_step + static_cast<int>(i),
                           static_cast<int>(n_levels)};
    std::size_t pick;
    const bool explore =
        options.epsilon > 0.0 && Uniform01(rng) < options.epsilon;
    if (explore) {
      pick = UniformIndex(rng, candidates.size());
      scorers[i]->Score(ctx, std::span(&candidates[pick], 1));
      result.final_best = candidates[pick].value;
    } else {
      scorers[i]->Score(ctx, candidates);
      pick = ArgMax(candidates);
      result.final_best = candidates[pick].value;
    }
    const Candidate& chosen = candidates[pick];
    if (options.record) {
      result.records.push_back({env.i1, env.i2, chosen});
    }
    result.chosen.push_back(chosen);
    const Extent& next = schedule[std::min(i + 1, n_levels - 1)].extent;
    if (!world::Sense(env, world, chosen.gaze, next)) {
      result.failure = world::Failure::kOutsideWorkspace;
      return result;
    }
  }
  result.final_gaze = env.gaze;
  result.final_value = result.chosen.back().value;
  result.completed = true;
  return result;
}

TrialResult NTrialSelect(world::EnvState& env, const world::WorldConfig& world,
                         const GazeSchedule& schedule,
                         std::span<Scorer* const> scorers, int n_trials,
                         TrialOptions options, Rng& rng,
                         std::vector<double>* trial_values) {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  options.epsilon = 0.0;
  if (trial_values) trial_values->clear();
  std::optional<world::EnvState> best_env;
  TrialResult best;
  int empty = 0;
  for (int t = 0; t < n_trials; ++t) {
    world::EnvState copy = env;
    TrialResult r = RunTrial(copy, world, schedule, scorers, options, rng);
    if (r.failure == world::Failure::kEmptyCandidates) ++empty;
    if (trial_values) trial_values->push_back(r.final_value);
    if (!best_env || r.final_value > best.final_value) {
      best = std::move(r);
      best_env = std::move(copy);
    }
  }
  if (empty == n_trials) {
    throw std::runtime_error("no candidates in any trial");
  }
  env = std::move(*best_env);
  return best;
}

}  // namespace hse3s::sampling
