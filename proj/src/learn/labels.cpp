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

#include "hse3s/learn/labels.hpp"

#include <stdexcept>

namespace hse3s::learn {

std::vector<double> MonteCarloLabels(std::span<const double> rewards) {
  if (rewards.empty()) throw std::invalid_argument("empty reward list");
  std::vector<double> labels(rewards.size());
  double acc = 0.0;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    acc = rewards[t] + acc;
    labels[t] = acc;
  }
  return labels;
}

}  // namespace hse3s::learn
