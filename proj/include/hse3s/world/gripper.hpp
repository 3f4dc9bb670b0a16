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

#ifndef HSE3S_WORLD_GRIPPER_HPP_
#define HSE3S_WORLD_GRIPPER_HPP_

#include <optional>
#include <span>
#include <vector>

#include "hse3s/geometry/convex.hpp"
#include "hse3s/world/objects.hpp"

namespace hse3s::world {

// Parallel-jaw gripper in its own frame (the gaze frame): the fingers close
// along y, the hand approaches along -z so the palm sits on the +z side, and
// the closing line passes through the origin.
struct GripperGeometry {
  double max_width = 0.085;
  double finger_depth = 0.04;
  double finger_thickness = 0.01;  // along y
  double finger_width = 0.02;      // along x
  double tip_margin = 0.01;        // fingertips extend this far below the line
  double palm_thickness = 0.02;
};

enum class Aperture { kOpen, kClosed };

struct HeldObject {
  int index = -1;  // position in the scene list
  Pose grasp;      // object pose in the gripper frame
};

struct Gripper {
  GripperGeometry geometry;
  Aperture aperture = Aperture::kOpen;
  Pose pose;
  std::optional<HeldObject> held;
};

// Two open fingers and the palm, posed in the world.
std::vector<Body> GripperBodies(const Pose& pose, const GripperGeometry& g);

// Result of closing along the line between the fingers.
struct GraspAnalysis {
  bool antipodal = false;
  int object_index = -1;
  double separation = 0.0;       // distance between the two contacts
  double max_angle_deg = 180.0;  // worst normal/closing-direction angle
};

GraspAnalysis AnalyzeGrasp(std::span<const SceneObject> scene,
                           const Pose& gripper_pose, double max_width,
                           double friction_half_angle_deg);

bool AntipodalCheck(std::span<const SceneObject> scene,
                    const Pose& gripper_pose, double max_width,
                    double friction_half_angle_deg);

// Overlap must exceed this depth to count as collision.
inline constexpr double kContactTolerance = 0.0005;

// Gripper body (and held object, if any) against every non-held object and
// the table plane z = 0.
bool CollisionCheck(std::span<const SceneObject> scene,
                    const Pose& gripper_pose, const GripperGeometry& g,
                    const std::optional<HeldObject>& held = std::nullopt,
                    double tolerance = kContactTolerance);

// Generic form: arbitrary bodies against the scene (skipping one index) and
// the table.
bool BodiesCollide(std::span<const Body> bodies,
                   std::span<const SceneObject> scene, int skip_index,
                   double tolerance = kContactTolerance);

}  // namespace hse3s::world

#endif  // HSE3S_WORLD_GRIPPER_HPP_
