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

#ifndef HSE3S_RNG_HPP_
#define HSE3S_RNG_HPP_

#include <cstdint>
#include <random>

namespace hse3s {

// Engine used everywhere. Draws go through the helpers below so results do
// not depend on the standard library's distribution implementations.
using Rng = std::mt19937_64;

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for (base, a, b).
constexpr std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t a,
                                   std::uint64_t b = 0) {
  return SplitMix64(SplitMix64(SplitMix64(base) ^ a) ^ (b * 0x2545f4914f6cdd1dULL));
}

// Uniform in [0, 1).
inline double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double Uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * Uniform01(rng);
}

// Uniform integer in [lo, hi].
inline int UniformInt(Rng& rng, int lo, int hi) {
  const auto span = static_cast<unsigned __int128>(hi - lo + 1);
  return lo + static_cast<int>((static_cast<unsigned __int128>(rng()) * span) >> 64);
}

inline std::size_t UniformIndex(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

}  // namespace hse3s

#endif  // HSE3S_RNG_HPP_
