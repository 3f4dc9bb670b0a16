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

#ifndef HSE3S_LEARN_QSCORER_HPP_
#define HSE3S_LEARN_QSCORER_HPP_

#include <vector>

#include "hse3s/nn/qfunction.hpp"
#include "hse3s/sampling/trial.hpp"

namespace hse3s::learn {

// Network input scaling: positions in units of 10 cm, angles in units of pi.
nn::Action NormalizeAction(const sampling::Action& a);

// [I1; I2] as one channel-major stack.
std::vector<double> ImageStack(const geometry::HeightMapImage& i1,
                               const geometry::HeightMapImage& i2);

// Scores candidates with a value network: the convolutional trunk runs once
// per level, the dense head once per candidate.
class QScorer : public sampling::Scorer {
 public:
  explicit QScorer(const nn::QFunction* q) : q_(q) {}
  void Score(const sampling::LevelContext& ctx,
             std::span<sampling::Candidate> candidates) override;

 private:
  const nn::QFunction* q_;
};

}  // namespace hse3s::learn

#endif  // HSE3S_LEARN_QSCORER_HPP_
