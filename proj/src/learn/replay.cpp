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

#include "hse3s/learn/replay.hpp"

#include <cmath>
#include <stdexcept>

namespace hse3s::learn {

Quantized Quantize(const geometry::HeightMapImage& image) {
  Quantized q(image.data().size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = static_cast<std::uint16_t>(std::lround(image.data()[i] * 65535.0));
  }
  return q;
}

void Dequantize(const Quantized& q, double* out) {
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i] / 65535.0;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity, int n_decisions)
    : capacity_(capacity), by_decision_(n_decisions) {
  if (capacity < 1) throw std::invalid_argument("buffer capacity must be >= 1");
}

void ReplayBuffer::AddEpisode(std::int64_t id,
                              std::vector<StoredTransition> transitions) {
  if (transitions.size() > capacity_) {
    throw std::invalid_argument("episode larger than the replay buffer");
  }
  for (const StoredTransition& t : transitions) {
    if (t.decision < 0 || t.decision >= static_cast<int>(by_decision_.size())) {
      throw std::out_of_range("transition decision index out of range");
    }
  }
  while (size_ + transitions.size() > capacity_) {
    const Episode& old = episodes_.front();
    for (const StoredTransition& t : old.transitions) {
      by_decision_[t.decision].pop_front();
    }
    size_ -= old.transitions.size();
    episodes_.pop_front();
  }
  episodes_.push_back({id, std::move(transitions)});
  for (const StoredTransition& t : episodes_.back().transitions) {
    by_decision_[t.decision].push_back(&t);
  }
  size_ += episodes_.back().transitions.size();
}

std::vector<std::int64_t> ReplayBuffer::EpisodeIds() const {
  std::vector<std::int64_t> ids;
  for (const Episode& e : episodes_) ids.push_back(e.id);
  return ids;
}

const StoredTransition& ReplayBuffer::Sample(int decision, Rng& rng) const {
  const auto& list = by_decision_[decision];
  if (list.empty()) throw std::out_of_range("no transitions for this network");
  return *list[UniformIndex(rng, list.size())];
}

void ReplayBuffer::Decode(const StoredTransition& t, std::size_t image_size,
                          std::vector<double>& stack) {
  stack.assign(2 * image_size, 0.0);
  Dequantize(t.i1, stack.data());
  if (t.i2) Dequantize(*t.i2, stack.data() + image_size);
}

}  // namespace hse3s::learn
