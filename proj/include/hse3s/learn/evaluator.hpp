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

#ifndef HSE3S_LEARN_EVALUATOR_HPP_
#define HSE3S_LEARN_EVALUATOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "hse3s/learn/episode.hpp"

namespace hse3s::learn {

enum class Conditions { kAntipodal, kAntipodalCollisionFree };
Conditions ParseConditions(const std::string& s);  // "a" or "acf"

// Why an episode did not complete the task, first match wins:
// detection failure (best final value under the threshold in the phase that
// failed), grasp failure, placed off support, placed upside down, placed
// into the support, or any other unmet place condition.
enum class FailureKind { kNone, kDF, kGF, kFOS, kPUD, kPIS, kOther };
const char* ToString(FailureKind k);

struct EvalConfig {
  EpisodeSetup episode;  // n_trials selects the n-trial protocol
  int episodes = 1000;
  std::uint64_t seed = 0;
  double detection_threshold = 0.5;
  int workers = 1;
};

struct EpisodeOutcome {
  bool grasp_a = false;
  bool grasp_acf = false;
  bool place = false;
  bool task = false;
  double grasp_reward = 0.0;
  double place_reward = 0.0;
  FailureKind failure = FailureKind::kNone;
};

struct EvalReport {
  int episodes = 0;
  int grasp_a = 0;
  int grasp_acf = 0;
  int place = 0;
  int task = 0;
  int failures[7] = {};  // indexed by FailureKind
  double mean_grasp_reward = 0.0;
  double mean_place_reward = 0.0;
  std::vector<EpisodeOutcome> outcomes;

  int GraspSuccesses(Conditions c) const {
    return c == Conditions::kAntipodal ? grasp_a : grasp_acf;
  }
};

FailureKind Classify(const EpisodeResult& e, double threshold);

// Seeds for evaluation episode i; the same scenes for every protocol.
std::uint64_t EvalEpisodeSeed(std::uint64_t seed, int index);

// Greedy episodes on fresh scenes.
EvalReport Evaluate(const EvalConfig& cfg,
                    std::span<sampling::Scorer* const> grasp,
                    std::span<sampling::Scorer* const> place);

// Random-policy baseline: every choice uniform over the candidates.
EvalReport RandomBaseline(const EpisodeSetup& setup, int episodes,
                          std::uint64_t seed, int workers = 1);

// Table of rates with 95% Wilson intervals; `csv` selects comma-separated
// output (header + one row per metric).
std::string FormatReport(const EvalReport& r, Conditions c, bool csv);

}  // namespace hse3s::learn

#endif  // HSE3S_LEARN_EVALUATOR_HPP_
