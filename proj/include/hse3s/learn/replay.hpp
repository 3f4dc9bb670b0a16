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

#ifndef HSE3S_LEARN_REPLAY_HPP_
#define HSE3S_LEARN_REPLAY_HPP_

#include <cstdint>
#include <deque>
#include <memory>
#include <vector>

#include "hse3s/geometry/sensing.hpp"
#include "hse3s/nn/qfunction.hpp"
#include "hse3s/rng.hpp"

namespace hse3s::learn {

// Height maps are stored as 16-bit fractions of 1 to keep the buffer small.
using Quantized = std::vector<std::uint16_t>;
Quantized Quantize(const geometry::HeightMapImage& image);
void Dequantize(const Quantized& q, double* out);

struct StoredTransition {
  int decision = 0;  // value network index
  Quantized i1;
  std::shared_ptr<const Quantized> i2;  // null when all zero
  nn::Action action{};                  // normalized
  double label = 0.0;
  double reward = 0.0;
  std::int64_t episode = 0;
};

// FIFO of whole episodes holding at most `capacity` transitions.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, int n_decisions);

  // Evicts the oldest episodes until the new one fits. Throws if a single
  // episode exceeds the capacity.
  void AddEpisode(std::int64_t id, std::vector<StoredTransition> transitions);

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t episodes() const { return episodes_.size(); }
  std::size_t Count(int decision) const { return by_decision_[decision].size(); }
  // Ids of the stored episodes, oldest first.
  std::vector<std::int64_t> EpisodeIds() const;

  // Uniform draw among the transitions of one value network.
  const StoredTransition& Sample(int decision, Rng& rng) const;
  const StoredTransition& At(int decision, std::size_t i) const {
    return *by_decision_[decision][i];
  }

  // Fills a [I1; I2] image stack for the network.
  static void Decode(const StoredTransition& t, std::size_t image_size,
                     std::vector<double>& stack);

 private:
  struct Episode {
    std::int64_t id;
    std::vector<StoredTransition> transitions;
  };
  std::size_t capacity_;
  std::size_t size_ = 0;
  std::deque<Episode> episodes_;
  std::vector<std::deque<const StoredTransition*>> by_decision_;
};

}  // namespace hse3s::learn

#endif  // HSE3S_LEARN_REPLAY_HPP_
