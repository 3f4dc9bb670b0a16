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

#include "hse3s/learn/trainer.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "hse3s/learn/labels.hpp"
#include "hse3s/learn/parallel.hpp"
#include "hse3s/learn/qscorer.hpp"

namespace hse3s::learn {

void RoundConfig::Validate() const {
  if (rounds < 1 || episodes_per_round < 1 || sgd_iters_per_round < 1) {
    throw std::invalid_argument("round settings must be positive");
  }
}

std::string CurveCsvHeader() {
  return "round,episodes,mean_grasp_reward,mean_place_reward,epsilon_grasp,"
         "epsilon_place,wall_seconds\n";
}

std::string CurveCsvRow(const CurveRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                r.round, r.episodes, r.mean_grasp_reward, r.mean_place_reward,
                r.epsilon_grasp, r.epsilon_place, r.wall_seconds);
  return buf;
}

std::vector<nn::QFunction> InitNets(const nn::Arch& arch, std::uint64_t seed) {
  std::vector<nn::QFunction> nets;
  for (int d = 0; d < kDecisions; ++d) {
    nets.push_back(nn::Init(arch, DeriveSeed(seed, 0x9e7, d)));
  }
  return nets;
}

std::uint64_t TrainEpisodeSeed(std::uint64_t seed, std::int64_t index) {
  return DeriveSeed(seed, 0xe5, static_cast<std::uint64_t>(index));
}

std::uint64_t TrainChoiceSeed(std::uint64_t seed, std::int64_t index) {
  return DeriveSeed(seed, 0xac, static_cast<std::uint64_t>(index));
}

std::vector<StoredTransition> ToStored(const EpisodeResult& episode) {
  std::vector<double> rewards;
  for (const Transition& t : episode.transitions) rewards.push_back(t.reward);
  std::vector<StoredTransition> out;
  if (rewards.empty()) return out;
  const std::vector<double> labels = MonteCarloLabels(rewards);
  std::shared_ptr<const Quantized> place_i2;
  for (std::size_t i = 0; i < episode.transitions.size(); ++i) {
    const Transition& t = episode.transitions[i];
    if (t.decision < 0) continue;
    StoredTransition s;
    s.decision = t.decision;
    s.i1 = Quantize(t.i1);
    if (!t.i2.AllZero()) {
      // All place-phase steps share the same snapshot.
      if (!place_i2) place_i2 = std::make_shared<const Quantized>(Quantize(t.i2));
      s.i2 = place_i2;
    }
    s.action = NormalizeAction(t.action);
    s.label = labels[i];
    s.reward = t.reward;
    s.episode = t.episode;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

double TrainNet(nn::QFunction& q, const ReplayBuffer& buffer, int decision,
                const TrainConfig& cfg, Rng& rng) {
  const std::size_t image_size = q.arch.ImageSize() / 2;
  std::vector<std::vector<double>> stacks(cfg.batch);
  std::vector<nn::Sample> batch(cfg.batch);
  double loss_sum = 0.0;
  const int iters = cfg.rounds.sgd_iters_per_round;
  for (int it = 0; it < iters; ++it) {
    for (int b = 0; b < cfg.batch; ++b) {
      const StoredTransition& t = buffer.Sample(decision, rng);
      ReplayBuffer::Decode(t, image_size, stacks[b]);
      batch[b] = {stacks[b], t.action, t.label};
    }
    const double lr =
        cfg.lr / (1.0 + cfg.lr_decay * static_cast<double>(q.step_count));
    loss_sum += nn::SgdStep(q, batch, lr, q.step_count);
  }
  return loss_sum / iters;
}

}  // namespace

TrainResult Train(const TrainConfig& cfg, const RoundCallback& on_round) {
  cfg.rounds.Validate();
  cfg.exploration.Validate();
  cfg.episode.schedule.Validate();
  if (cfg.episode.schedule.size() != kDecisions / 2) {
    throw std::invalid_argument("training expects a six-level schedule");
  }
  if (cfg.batch < 1) throw std::invalid_argument("batch must be >= 1");
  if (!(cfg.lr > 0) || cfg.lr_decay < 0) {
    throw std::invalid_argument("need lr > 0 and lr_decay >= 0");
  }
  if (static_cast<std::size_t>(cfg.arch.resolution) !=
          static_cast<std::size_t>(cfg.episode.world.resolution) ||
      cfg.arch.in_channels != 6) {
    throw std::invalid_argument("arch input must match two height maps");
  }

  TrainResult result;
  result.nets = InitNets(cfg.arch, cfg.arch_seed);
  ReplayBuffer buffer(cfg.buffer_capacity, kDecisions);
  EpisodeSetup setup = cfg.episode;
  setup.record = true;
  setup.n_trials = 1;
  const int per_round = cfg.rounds.episodes_per_round;
  const auto start = std::chrono::steady_clock::now();

  for (int round = 0; round < cfg.rounds.rounds; ++round) {
    CurveRow row;
    row.round = round;
    row.episodes = per_round;
    row.epsilon_grasp = cfg.exploration.Grasp(round);
    row.epsilon_place = cfg.exploration.Place(round, result.place_experiences);

    std::vector<QScorer> scorers;
    for (const nn::QFunction& q : result.nets) scorers.emplace_back(&q);
    std::vector<sampling::Scorer*> ptrs;
    for (QScorer& s : scorers) ptrs.push_back(&s);
    const std::span<sampling::Scorer* const> grasp(ptrs.data(), 6);
    const std::span<sampling::Scorer* const> place(ptrs.data() + 6, 6);

    std::vector<EpisodeResult> episodes(per_round);
    const std::int64_t base = static_cast<std::int64_t>(round) * per_round;
    ParallelFor(per_round, cfg.workers, [&](int e) {
      const std::int64_t index = base + e;
      Rng rng(TrainChoiceSeed(cfg.seed, index));
      episodes[e] = RunEpisode(setup, TrainEpisodeSeed(cfg.seed, index), grasp,
                               place, row.epsilon_grasp, row.epsilon_place,
                               rng, index);
    });
    int grasped = 0, placed = 0;
    for (int e = 0; e < per_round; ++e) {
      EpisodeResult& ep = episodes[e];
      row.mean_grasp_reward += ep.grasp_reward / per_round;
      row.mean_place_reward += ep.place_reward / per_round;
      grasped += ep.grasped ? 1 : 0;
      placed += ep.place_reward > 0 ? 1 : 0;
      if (ep.grasped) ++result.place_experiences;
      buffer.AddEpisode(base + e, ToStored(ep));
      ep.transitions.clear();
    }
    row.grasp_success = static_cast<double>(grasped) / per_round;
    row.place_success = static_cast<double>(placed) / per_round;

    row.mean_loss.assign(kDecisions, 0.0);
    ParallelFor(kDecisions, cfg.workers, [&](int d) {
      if (buffer.Count(d) == 0) return;
      Rng rng(DeriveSeed(cfg.seed, 0x56d, static_cast<std::uint64_t>(round) *
                                              kDecisions + d));
      row.mean_loss[d] = TrainNet(result.nets[d], buffer, d, cfg, rng);
    });

    if (cfg.record_wall_time) {
      row.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    }
    result.curve.push_back(row);
    if (on_round) on_round(row, result.nets);
  }
  return result;
}

}  // namespace hse3s::learn
