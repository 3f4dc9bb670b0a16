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

#ifndef HSE3S_WORLD_ENV_HPP_
#define HSE3S_WORLD_ENV_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hse3s/geometry/sensing.hpp"
#include "hse3s/world/gripper.hpp"
#include "hse3s/world/objects.hpp"
#include "hse3s/world/reward.hpp"

namespace hse3s::world {

using geometry::Extent;
using geometry::HeightMapImage;
using geometry::PointCloud;

struct CameraRig {
  int rows = 200;
  int cols = 200;
  double distance = 0.6;
  double elevation_deg = 45.0;
  double fov_deg = 50.0;
  Vec3 target = Vec3(0.0, 0.0, 0.05);
};

// Gaze positions must fall inside this table-centered box.
struct Workspace {
  double half_xy = 0.2;
  double z_min = 0.005;
  double z_max = 0.365;

  bool Contains(const Vec3& p) const;
};

struct WorldConfig {
  Task task = Task::kBlocks;
  SceneConfig scene;
  GripperGeometry gripper;
  RewardConfig reward;
  CameraRig cameras;
  Workspace workspace;
  int resolution = 64;
  // Observation taken automatically at the start of each phase.
  Pose initial_gaze = Pose::Translation(0.0, 0.0, 0.185);
  double initial_extent = 0.36;
  // Vertical approach checked from `approach_start` up to `approach_height`
  // in `approach_step` increments.
  double approach_start = 0.02;
  double approach_step = 0.01;
  double approach_height = 0.3;
  double table_half = 0.5;
  double table_thickness = 0.01;
};

enum class Phase { kGrasp, kPlace };
enum class EffectOp { kOpen, kClose };

enum class Failure {
  kNone,
  kOutsideWorkspace,
  kEmptyCandidates,
  kMotionInfeasible,
  kBadSequence,
};
std::string_view ToString(Failure f);

struct EnvState {
  std::vector<SceneObject> scene;
  Gripper gripper;
  Pose gaze;
  Extent extent = Extent::Cube(0.36);
  HeightMapImage i1;  // latest observation
  HeightMapImage i2;  // observation just before the last move-effect
  Phase phase = Phase::kGrasp;
  int step_index = 0;
  bool episode_done = false;
  bool degenerate = false;
  Failure failure = Failure::kNone;
  PointCloud cloud;  // merged render of the visible scene, world frame
};

// Result of a move-effect action.
struct EffectResult {
  double reward = 0.0;
  RewardSpec spec;
  bool antipodal = false;       // grasp only
  bool collision_free = false;
  bool feasible = true;
  std::optional<PlaceOutcome> place;  // place only
};

EnvState SpawnScene(const WorldConfig& cfg, std::uint64_t seed);
// Fixture entry point: a given object list instead of a sampled one.
EnvState SpawnScene(const WorldConfig& cfg, std::vector<SceneObject> objects);

// Replaces I1 with the height maps of the cloud cropped at (gaze, extent).
// A gaze outside the workspace leaves the state unchanged apart from the
// failure flag and returns false.
bool Sense(EnvState& state, const WorldConfig& cfg, const Pose& gaze,
           const Extent& extent);

// Teleports the gripper to the current gaze and runs the controller. Close
// must precede open; open ends the episode, as does a close that grasps
// nothing.
EffectResult MoveEffect(EnvState& state, const WorldConfig& cfg, EffectOp op);

// Bodies the sensor sees: the table slab plus every object not in hand.
std::vector<Body> VisibleBodies(const EnvState& state, const WorldConfig& cfg);

// Re-renders the merged cloud from the current scene.
void Render(EnvState& state, const WorldConfig& cfg);

// True if lifting `bodies` straight up from approach_start to
// approach_height never touches a non-skipped object.
bool ApproachClear(std::span<const Body> bodies,
                   std::span<const SceneObject> scene, int skip_index,
                   const WorldConfig& cfg);

}  // namespace hse3s::world

#endif  // HSE3S_WORLD_ENV_HPP_
