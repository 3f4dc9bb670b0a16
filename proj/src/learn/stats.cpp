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

#include "hse3s/learn/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace hse3s::learn {

std::pair<double, double> WilsonInterval(int k, int n, double z) {
  if (n <= 0 || k < 0 || k > n) throw std::invalid_argument("bad counts");
  const double p = static_cast<double>(k) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double BinomialUpperTail(int k, int n, double p) {
  if (n < 0 || p < 0 || p > 1) throw std::invalid_argument("bad binomial");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  double total = 0.0;
  for (int i = k; i <= n; ++i) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                            std::lgamma(n - i + 1.0) +
                            (i > 0 ? i * std::log(p) : 0.0) +
                            (n - i > 0 ? (n - i) * std::log1p(-p) : 0.0);
    total += std::exp(log_term);
  }
  return std::min(1.0, total);
}

double McNemarOneSided(int b, int c) {
  return BinomialUpperTail(b, b + c, 0.5);
}

}  // namespace hse3s::learn
