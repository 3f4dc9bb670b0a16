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

#ifndef HSE3S_WORLD_SNAPSHOT_HPP_
#define HSE3S_WORLD_SNAPSHOT_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hse3s/world/objects.hpp"

namespace hse3s::world {

// One object per line:
//   id category shape-params r00 r01 r02 r10 r11 r12 r20 r21 r22 tx ty tz
// with shape-params one of
//   box hx hy hz
//   cylinder radius height
//   composite n (shape-params pose12){n}
// Numbers use %.17g so the text round-trips exactly.
std::string FormatShape(const Shape& shape);
std::string FormatPose(const Pose& pose);
void WriteSnapshot(std::ostream& os, std::span<const SceneObject> scene);
std::string SnapshotString(std::span<const SceneObject> scene);

// Throws std::runtime_error with the offending line number on bad input.
std::vector<SceneObject> ReadSnapshot(std::istream& is);
std::vector<SceneObject> ParseSnapshot(const std::string& text);

}  // namespace hse3s::world

#endif  // HSE3S_WORLD_SNAPSHOT_HPP_
