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

#include "hse3s/learn/episode.hpp"

namespace hse3s::learn {

using sampling::TrialOptions;
using sampling::TrialResult;

int DecisionIndex(int time_step) {
  if (time_step >= 0 && time_step < kCloseStep) return time_step;
  if (time_step > kCloseStep && time_step < kOpenStep) return time_step - 1;
  return -1;
}

namespace {

// Runs one phase; returns false if the hierarchy aborted.
bool RunPhase(world::EnvState& env, const EpisodeSetup& setup,
              std::span<sampling::Scorer* const> scorers, double epsilon,
              int first_step, Rng& rng, std::int64_t id, EpisodeResult& out,
              double& best) {
  TrialOptions opt;
  opt.n_samples = setup.n_samples;
  opt.epsilon = epsilon;
  opt.first_time_step = DecisionIndex(first_step);
  opt.record = setup.record;
  TrialResult trial =
      setup.n_trials > 1
          ? sampling::NTrialSelect(env, setup.world, setup.schedule, scorers,
                                   setup.n_trials, opt, rng)
          : sampling::RunTrial(env, setup.world, setup.schedule, scorers, opt,
                               rng);
  best = trial.final_best;
  for (std::size_t i = 0; i < trial.records.size(); ++i) {
    Transition t;
    t.time_step = first_step + static_cast<int>(i);
    t.decision = DecisionIndex(t.time_step);
    t.i1 = std::move(trial.records[i].i1);
    t.i2 = std::move(trial.records[i].i2);
    t.action = trial.records[i].chosen.action;
    t.episode = id;
    out.transitions.push_back(std::move(t));
  }
  if (!trial.completed) {
    out.failure = trial.failure;
    return false;
  }
  return true;
}

// Move-effect transition; the state is the one the effect was applied in.
void AddEffect(Transition t, int step, double reward, std::int64_t id,
               EpisodeResult& out) {
  t.time_step = step;
  t.reward = reward;
  t.episode = id;
  out.transitions.push_back(std::move(t));
}

}  // namespace

EpisodeResult RunEpisode(const EpisodeSetup& setup, std::uint64_t env_seed,
                         std::span<sampling::Scorer* const> grasp,
                         std::span<sampling::Scorer* const> place,
                         double eps_grasp, double eps_place, Rng& rng,
                         std::int64_t episode_id) {
  return RunEpisodeFrom(setup, world::SpawnScene(setup.world, env_seed), grasp,
                        place, eps_grasp, eps_place, rng, episode_id);
}

EpisodeResult RunEpisodeFrom(const EpisodeSetup& setup, world::EnvState env,
                             std::span<sampling::Scorer* const> grasp,
                             std::span<sampling::Scorer* const> place,
                             double eps_grasp, double eps_place, Rng& rng,
                             std::int64_t episode_id) {
  EpisodeResult out;
  out.degenerate = env.degenerate;

  if (!RunPhase(env, setup, grasp, eps_grasp, 0, rng, episode_id, out,
                out.grasp_best)) {
    return out;
  }
  out.grasp_attempted = true;
  Transition before_close;
  if (setup.record) before_close = {kCloseStep, -1, env.i1, env.i2};
  world::EffectResult close =
      world::MoveEffect(env, setup.world, world::EffectOp::kClose);
  out.grasp_reward = close.reward;
  out.antipodal = close.antipodal;
  out.collision_free = close.collision_free;
  out.grasped = env.gripper.held.has_value();
  if (setup.record) {
    AddEffect(std::move(before_close), kCloseStep, close.reward, episode_id,
              out);
  }
  out.ret = close.reward;
  if (!out.grasped) {
    out.failure = env.failure;
    return out;
  }

  if (!RunPhase(env, setup, place, eps_place, kCloseStep + 1, rng, episode_id,
                out, out.place_best)) {
    return out;
  }
  out.place_attempted = true;
  Transition before_open;
  if (setup.record) before_open = {kOpenStep, -1, env.i1, env.i2};
  world::EffectResult open =
      world::MoveEffect(env, setup.world, world::EffectOp::kOpen);
  out.place_reward = open.reward;
  out.place = open.place;
  out.failure = env.failure;
  if (setup.record) {
    AddEffect(std::move(before_open), kOpenStep, open.reward, episode_id, out);
  }
  out.ret += open.reward;
  return out;
}

}  // namespace hse3s::learn
