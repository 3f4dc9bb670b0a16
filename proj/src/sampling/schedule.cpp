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

#include "hse3s/sampling/schedule.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hse3s::sampling {

std::string_view ToString(LevelMode m) {
  switch (m) {
    case LevelMode::kCloudPoint:
      return "cloud-point";
    case LevelMode::kFreePosition:
      return "free-position";
    case LevelMode::kRotationZ:
      return "rotation-z";
    case LevelMode::kRotationY:
      return "rotation-y";
    case LevelMode::kAxisOffset:
      return "axis-offset";
  }
  return "?";
}

LevelMode ParseLevelMode(std::string_view s) {
  for (LevelMode m : {LevelMode::kCloudPoint, LevelMode::kFreePosition,
                      LevelMode::kRotationZ, LevelMode::kRotationY,
                      LevelMode::kAxisOffset}) {
    if (ToString(m) == s) return m;
  }
  throw std::invalid_argument("unknown level mode '" + std::string(s) + "'");
}

void GazeLevel::Validate() const {
  for (double d : range) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("level half-ranges must be finite and >= 0");
    }
  }
  const bool positional = range[0] > 0 || range[1] > 0 || range[2] > 0;
  const bool rotational = range[3] > 0 || range[4] > 0 || range[5] > 0;
  const bool rotation_mode =
      mode == LevelMode::kRotationZ || mode == LevelMode::kRotationY;
  if (rotation_mode && positional) {
    throw std::invalid_argument("rotation level with positional range");
  }
  if (!rotation_mode && rotational) {
    throw std::invalid_argument("position level with rotational range");
  }
}

void GazeSchedule::Validate() const {
  if (levels.empty()) throw std::invalid_argument("empty gaze schedule");
  for (const GazeLevel& l : levels) l.Validate();
}

GazeSchedule DefaultSchedule() {
  const double h = 0.045;
  const double off = 0.105;
  GazeSchedule s;
  s.levels = {
      {LevelMode::kCloudPoint, Extent::Cube(0.36), {0.18, 0.18, 0.18, 0, 0, 0}},
      {LevelMode::kFreePosition, Extent::Cube(0.09), {h, h, h, 0, 0, 0}},
      {LevelMode::kRotationZ, Extent::Cube(0.09), {0, 0, 0, 0, 0, M_PI}},
      {LevelMode::kRotationY, Extent::Cube(0.09), {0, 0, 0, 0, M_PI / 2, 0}},
      {LevelMode::kRotationZ, Extent::Cube(0.09), {0, 0, 0, 0, 0, M_PI}},
      {LevelMode::kAxisOffset, Extent::Cube(off), {off, off, off, 0, 0, 0}},
  };
  return s;
}

std::string FormatSchedule(const GazeSchedule& s) {
  std::string out;
  char buf[32];
  for (const GazeLevel& l : s.levels) {
    out += ToString(l.mode);
    for (int i = 0; i < 3; ++i) {
      std::snprintf(buf, sizeof(buf), " %.17g", l.extent[i]);
      out += buf;
    }
    for (double d : l.range) {
      std::snprintf(buf, sizeof(buf), " %.17g", d);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

GazeSchedule ParseSchedule(std::string_view text) {
  GazeSchedule s;
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos ||
        line[line.find_first_not_of(" \t")] == '#') {
      continue;
    }
    try {
      std::istringstream ls(line);
      std::string mode;
      ls >> mode;
      GazeLevel level;
      level.mode = ParseLevelMode(mode);
      Vec3 e;
      for (int i = 0; i < 3; ++i) {
        if (!(ls >> e[i])) throw std::runtime_error("missing extent");
      }
      level.extent = Extent(e);
      for (double& d : level.range) {
        if (!(ls >> d)) throw std::runtime_error("missing half-range");
      }
      std::string extra;
      if (ls >> extra) throw std::runtime_error("trailing '" + extra + "'");
      level.Validate();
      s.levels.push_back(level);
    } catch (const std::exception& ex) {
      throw std::runtime_error("schedule line " + std::to_string(line_no) +
                               ": " + ex.what());
    }
  }
  s.Validate();
  return s;
}

namespace {

double SnappedRatio(double v0, double alpha) {
  if (!(v0 > 0) || !(alpha > 0)) {
    throw std::invalid_argument("volumes must be positive");
  }
  const double r = v0 / alpha;
  const double n = std::round(r);
  return std::abs(r - n) <= kRatioSnap * r ? n : r;
}

}  // namespace

std::int64_t FlatSamplesNeeded(double v0, double alpha) {
  return static_cast<std::int64_t>(std::ceil(SnappedRatio(v0, alpha)));
}

int LevelsNeeded(double v0, double alpha) {
  const double r = SnappedRatio(v0, alpha);
  int t = 0;
  double p = 1.0;
  while (p < r) {
    p *= 8.0;
    ++t;
  }
  return t;
}

}  // namespace hse3s::sampling
