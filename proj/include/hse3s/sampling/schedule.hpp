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

#ifndef HSE3S_SAMPLING_SCHEDULE_HPP_
#define HSE3S_SAMPLING_SCHEDULE_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hse3s/geometry/pose.hpp"

namespace hse3s::sampling {

using geometry::Extent;
using geometry::Pose;
using geometry::Vec3;

// Action vector layout: [x, y, z, theta (about x), phi (about y),
// rho (about z)], all in the current gaze frame.
using Action = std::array<double, 6>;

enum class LevelMode {
  kCloudPoint,    // move to a point of the observed cloud
  kFreePosition,  // uniform translation in the box +-range[0..2]
  kRotationZ,     // rotate about the current z axis by up to +-range[5]
  kRotationY,     // rotate about the current y axis by up to +-range[4]
  kAxisOffset,    // translate along one of x, y, z by up to +-range[axis]
};

std::string_view ToString(LevelMode m);
LevelMode ParseLevelMode(std::string_view s);

struct GazeLevel {
  LevelMode mode = LevelMode::kFreePosition;
  Extent extent = Extent::Cube(0.09);
  Action range{};  // half-ranges

  // Throws std::invalid_argument when a range is negative or a rotation
  // mode carries positional range (or the reverse).
  void Validate() const;
  bool operator==(const GazeLevel& o) const = default;
};

struct GazeSchedule {
  std::vector<GazeLevel> levels;

  std::size_t size() const { return levels.size(); }
  const GazeLevel& operator[](std::size_t i) const { return levels[i]; }
  void Validate() const;
  bool operator==(const GazeSchedule& o) const = default;
};

// Six levels: cloud point in a 36 cm cube, free position +-4.5 cm, rotation
// about z, about y (+-pi/2), about z again, then a single-axis offset of up
// to 10.5 cm with a 10.5 cm view.
GazeSchedule DefaultSchedule();

// One line per level: "<mode> ex ey ez dx dy dz dtheta dphi drho".
std::string FormatSchedule(const GazeSchedule& s);
// Throws std::runtime_error naming the line on malformed input.
GazeSchedule ParseSchedule(std::string_view text);

// Ratios within this relative distance of an integer count as that integer,
// so that e.g. 0.36^3 / 0.045^3 gives exactly 512.
inline constexpr double kRatioSnap = 1e-12;

// ceil(v0 / alpha): uniform samples needed to put one in every cell of size
// alpha.
std::int64_t FlatSamplesNeeded(double v0, double alpha);

// Smallest t with v0 / 8^t <= alpha (halving every side each level); 0 when
// v0 <= alpha.
int LevelsNeeded(double v0, double alpha);

// Samples used by the hierarchy at eight per level.
inline std::int64_t HierarchicalSamples(int levels) { return 8 * levels; }

}  // namespace hse3s::sampling

#endif  // HSE3S_SAMPLING_SCHEDULE_HPP_
