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

#ifndef HSE3S_LEARN_TRAINER_HPP_
#define HSE3S_LEARN_TRAINER_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hse3s/learn/episode.hpp"
#include "hse3s/learn/exploration.hpp"
#include "hse3s/learn/replay.hpp"
#include "hse3s/nn/qfunction.hpp"

namespace hse3s::learn {

inline constexpr int kDecisions = 12;

struct RoundConfig {
  int rounds = 30;
  int episodes_per_round = 2000;
  int sgd_iters_per_round = 3000;
  void Validate() const;
};

struct TrainConfig {
  EpisodeSetup episode;
  RoundConfig rounds;
  ExplorationSchedule exploration;
  nn::Arch arch;
  double lr = 1e-3;
  double lr_decay = 1e-4;  // lr / (1 + lr_decay * steps taken by that net)
  int batch = 32;
  std::uint64_t arch_seed = 1;
  std::uint64_t seed = 0;
  std::size_t buffer_capacity = 50000;
  int workers = 1;
  bool record_wall_time = false;  // otherwise wall_seconds is written as 0
};

struct CurveRow {
  int round = 0;
  int episodes = 0;
  double mean_grasp_reward = 0.0;
  double mean_place_reward = 0.0;
  double epsilon_grasp = 0.0;
  double epsilon_place = 0.0;
  double wall_seconds = 0.0;
  // Not part of the CSV.
  double grasp_success = 0.0;  // fraction of episodes that grasped
  double place_success = 0.0;
  std::vector<double> mean_loss;  // per network, 0 when untrained
};

std::string CurveCsvHeader();
std::string CurveCsvRow(const CurveRow& row);

// Value networks indexed by decision step (0-5 grasp, 6-11 place).
struct TrainResult {
  std::vector<nn::QFunction> nets;
  std::vector<CurveRow> curve;
  std::int64_t place_experiences = 0;
};

std::vector<nn::QFunction> InitNets(const nn::Arch& arch, std::uint64_t seed);

// Called after every round with the row and the networks at that point.
using RoundCallback =
    std::function<void(const CurveRow&, const std::vector<nn::QFunction>&)>;

// Rounds of episode collection followed by SGD on Monte Carlo labels.
// Results depend only on the config (not on the worker count).
TrainResult Train(const TrainConfig& cfg, const RoundCallback& on_round = {});

// Seeds used for training episode `index` (counted over the whole run).
std::uint64_t TrainEpisodeSeed(std::uint64_t seed, std::int64_t index);
std::uint64_t TrainChoiceSeed(std::uint64_t seed, std::int64_t index);

// Converts an episode to replay entries with Monte Carlo labels.
std::vector<StoredTransition> ToStored(const EpisodeResult& episode);

}  // namespace hse3s::learn

#endif  // HSE3S_LEARN_TRAINER_HPP_
