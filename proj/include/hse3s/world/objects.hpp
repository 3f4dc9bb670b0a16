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

#ifndef HSE3S_WORLD_OBJECTS_HPP_
#define HSE3S_WORLD_OBJECTS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hse3s/geometry/pose.hpp"
#include "hse3s/geometry/shape.hpp"

namespace hse3s::world {

using geometry::Body;
using geometry::Pose;
using geometry::Shape;
using geometry::Vec3;

enum class Task { kBlocks, kMugs, kBottles };
enum class Category { kBlock, kMug, kBottle, kCoaster };

std::string_view ToString(Task t);
std::string_view ToString(Category c);
// Throws std::invalid_argument on unknown names.
Task ParseTask(std::string_view s);
Category ParseCategory(std::string_view s);

struct SceneObject {
  int id = 0;
  Category category = Category::kBlock;
  Shape shape = geometry::Box{Vec3::Constant(0.01)};
  Pose pose;

  Body body() const { return Body{shape, pose}; }
};

// Object frames: blocks are centered; mugs, bottles and coasters have their
// origin at the base center with +z along the symmetry axis.
Shape MakeBlock(const Vec3& edges);
Shape MakeMug(double radius, double height);
Shape MakeBottle(double body_radius, double body_height, double neck_radius,
                 double neck_height);
Shape MakeCoaster(double radius, double thickness);

struct SceneConfig {
  int blocks_min = 2;
  int blocks_max = 10;
  int mugs_min = 1;
  int mugs_max = 5;
  int bottles_min = 1;
  int bottles_max = 3;
  int coasters = 3;
  double block_edge_min = 0.02;
  double block_edge_max = 0.06;
  // Objects are scattered uniformly in a square of this half-width around
  // the table center.
  double cluster_half = 0.12;
  int max_rejections = 1000;
};

struct SampledScene {
  std::vector<SceneObject> objects;
  bool degenerate = false;
};

// Deterministic per seed. Objects rest on the table (z = 0) without
// interpenetration; after max_rejections failed placements the scene is
// reduced to its first object and flagged degenerate.
SampledScene SampleScene(Task task, std::uint64_t seed,
                         const SceneConfig& config = {});

std::vector<Body> Bodies(std::span<const SceneObject> objects);

// True if any two objects overlap by more than `tolerance`.
bool AnyInterpenetration(std::span<const SceneObject> objects,
                         double tolerance = 0.0);

// Translates the pose vertically so the body's lowest point sits at z.
Pose RestAt(const Shape& shape, const Pose& pose, double z = 0.0);

}  // namespace hse3s::world

#endif  // HSE3S_WORLD_OBJECTS_HPP_
