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

#ifndef HSE3S_WORLD_REWARD_HPP_
#define HSE3S_WORLD_REWARD_HPP_

#include <span>
#include <string>
#include <vector>

#include "hse3s/world/gripper.hpp"
#include "hse3s/world/objects.hpp"

namespace hse3s::world {

struct Condition {
  std::string name;
  bool met = false;
};

// Partial-credit reward: zero unless every required condition holds, then
// the fraction of partial conditions that hold.
struct RewardSpec {
  std::vector<Condition> required;
  std::vector<Condition> partial;

  bool RequiredMet() const;
  double Value() const;
  // Looks a condition up by name in either list; throws if absent.
  bool Met(const std::string& name) const;
};

struct RewardConfig {
  double friction_half_angle_deg = 10.0;
  double max_width = 0.085;
  double clear_lift = 0.02;      // "not in collision if moved up" distance
  double settle_snap = 0.01;     // released objects this close to a support drop
};

RewardSpec GraspRewardSpec(const GraspAnalysis& analysis, bool collision_free,
                           const RewardConfig& cfg);

// Pose an object comes to rest at when released: unchanged unless its lowest
// point is within `snap` above a support (the table or another object), in
// which case it drops straight down onto it.
Pose Settle(const SceneObject& object, std::span<const SceneObject> scene,
            int skip_index, double snap);

// Facts about a release that feed both the reward and the failure taxonomy.
struct PlaceOutcome {
  RewardSpec spec;
  Pose settled_pose;
  bool over_support = false;   // footprint over a block/coaster/table
  bool upside_down = false;
  bool into_support = false;   // in collision and not clear when lifted
};

// Evaluates the task's place conditions for the held object released with
// the gripper at `release`. `scene` still contains the held object at
// held.index; it is ignored for collisions.
PlaceOutcome EvaluatePlace(Task task, std::span<const SceneObject> scene,
                           const HeldObject& held, const Pose& release,
                           const GripperGeometry& gripper,
                           const RewardConfig& cfg,
                           bool grasp_required_met = true);

double PlaceReward(Task task, std::span<const SceneObject> scene,
                   const HeldObject& held, const Pose& release,
                   const GripperGeometry& gripper, const RewardConfig& cfg);

// Footprint overlap helpers, exposed for tests.
using Polygon = std::vector<Eigen::Vector2d>;
double PolygonArea(const Polygon& p);
Polygon ClipConvex(const Polygon& subject, const Polygon& clip);
// Horizontal projection of the box face whose normal points most down (or
// up when `top` is set).
Polygon BoxFaceFootprint(const geometry::Box& box, const Pose& pose, bool top);

// Smallest angle between any of the object's axes (either sign) and world z.
double AxisAlignedTiltDeg(const Pose& pose);
// Angle between the object's +z axis and world +z.
double UprightTiltDeg(const Pose& pose);

}  // namespace hse3s::world

#endif  // HSE3S_WORLD_REWARD_HPP_
