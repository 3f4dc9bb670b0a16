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

#ifndef HSE3S_LEARN_STATS_HPP_
#define HSE3S_LEARN_STATS_HPP_

#include <utility>

namespace hse3s::learn {

// 95% (z = 1.96) Wilson score interval for k successes in n trials.
std::pair<double, double> WilsonInterval(int k, int n, double z = 1.96);

// P(X >= k) for X ~ Binomial(n, p).
double BinomialUpperTail(int k, int n, double p);

// Exact one-sided McNemar test on paired outcomes: `b` pairs where only the
// treatment succeeded, `c` where only the control did. Returns the p-value
// for "treatment better".
double McNemarOneSided(int b, int c);

}  // namespace hse3s::learn

#endif  // HSE3S_LEARN_STATS_HPP_
