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

#include "hse3s/learn/qscorer.hpp"

#include <cmath>

namespace hse3s::learn {

nn::Action NormalizeAction(const sampling::Action& a) {
  return {a[0] / 0.1, a[1] / 0.1, a[2] / 0.1,
          a[3] / M_PI, a[4] / M_PI, a[5] / M_PI};
}

std::vector<double> ImageStack(const geometry::HeightMapImage& i1,
                               const geometry::HeightMapImage& i2) {
  std::vector<double> out(i1.data());
  if (i2.resolution() == i1.resolution()) {
    out.insert(out.end(), i2.data().begin(), i2.data().end());
  } else {
    out.resize(2 * i1.data().size(), 0.0);
  }
  return out;
}

void QScorer::Score(const sampling::LevelContext& ctx,
                    std::span<sampling::Candidate> candidates) {
  const std::vector<double> stack = ImageStack(ctx.env.i1, ctx.env.i2);
  const nn::Trunk trunk = nn::ComputeTrunk(*q_, stack);
  for (sampling::Candidate& c : candidates) {
    c.value = nn::Head(*q_, trunk, NormalizeAction(c.action));
  }
}

}  // namespace hse3s::learn
