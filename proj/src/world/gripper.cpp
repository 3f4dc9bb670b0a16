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

#include "hse3s/world/gripper.hpp"

#include <algorithm>
#include <cmath>

namespace hse3s::world {

using geometry::Box;
using geometry::ConvexPiece;

std::vector<Body> GripperBodies(const Pose& pose, const GripperGeometry& g) {
  const double half_w = 0.5 * g.max_width;
  const double finger_z = 0.5 * g.finger_depth - g.tip_margin;
  const Box finger{Vec3(0.5 * g.finger_width, 0.5 * g.finger_thickness,
                        0.5 * g.finger_depth)};
  const Box palm{Vec3(0.5 * g.finger_width, half_w + g.finger_thickness,
                      0.5 * g.palm_thickness)};
  const double finger_y = half_w + 0.5 * g.finger_thickness;
  return {
      Body{finger, pose * Pose::Translation(0, -finger_y, finger_z)},
      Body{finger, pose * Pose::Translation(0, finger_y, finger_z)},
      Body{palm, pose * Pose::Translation(
                            0, 0, g.finger_depth - g.tip_margin +
                                      0.5 * g.palm_thickness)},
  };
}

namespace {

double AngleDeg(const Vec3& a, const Vec3& b) {
  return std::acos(std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0)) *
         180.0 / M_PI;
}

}  // namespace

GraspAnalysis AnalyzeGrasp(std::span<const SceneObject> scene,
                           const Pose& gripper_pose, double max_width,
                           double friction_half_angle_deg) {
  GraspAnalysis out;
  const std::vector<Body> bodies = Bodies(scene);
  const Vec3 close_dir = gripper_pose.axis(1);
  const Vec3 a = gripper_pose.Apply(Vec3(0, -0.5 * max_width, 0));
  const Vec3 b = gripper_pose.Apply(Vec3(0, 0.5 * max_width, 0));
  for (const Body& body : bodies) {
    if (geometry::Contains(body, a) || geometry::Contains(body, b)) {
      return out;
    }
  }
  auto hit_a = geometry::RaycastDetailed(bodies, a, close_dir, max_width);
  auto hit_b = geometry::RaycastDetailed(bodies, b, -close_dir, max_width);
  if (!hit_a || !hit_b || hit_a->index != hit_b->index) return out;
  out.object_index = hit_a->index;
  out.separation = (hit_a->hit.point - hit_b->hit.point).norm();
  out.max_angle_deg = std::max(AngleDeg(hit_a->hit.normal, -close_dir),
                               AngleDeg(hit_b->hit.normal, close_dir));
  out.antipodal = out.max_angle_deg <= friction_half_angle_deg &&
                  out.separation <= max_width;
  return out;
}

bool AntipodalCheck(std::span<const SceneObject> scene,
                    const Pose& gripper_pose, double max_width,
                    double friction_half_angle_deg) {
  return AnalyzeGrasp(scene, gripper_pose, max_width, friction_half_angle_deg)
      .antipodal;
}

bool BodiesCollide(std::span<const Body> bodies,
                   std::span<const SceneObject> scene, int skip_index,
                   double tolerance) {
  std::vector<ConvexPiece> moving;
  for (const Body& b : bodies) {
    auto pieces = geometry::ConvexPieces(b, tolerance);
    moving.insert(moving.end(), pieces.begin(), pieces.end());
  }
  for (const ConvexPiece& piece : moving) {
    if (geometry::Support(piece, -Vec3::UnitZ()).z() < 0.0) return true;
  }
  for (std::size_t i = 0; i < scene.size(); ++i) {
    if (static_cast<int>(i) == skip_index) continue;
    const auto pieces = geometry::ConvexPieces(scene[i].body());
    if (geometry::Intersects(moving, pieces)) return true;
  }
  return false;
}

bool CollisionCheck(std::span<const SceneObject> scene,
                    const Pose& gripper_pose, const GripperGeometry& g,
                    const std::optional<HeldObject>& held, double tolerance) {
  std::vector<Body> bodies = GripperBodies(gripper_pose, g);
  int skip = -1;
  if (held) {
    skip = held->index;
    bodies.push_back(
        Body{scene[held->index].shape, gripper_pose * held->grasp});
  }
  return BodiesCollide(bodies, scene, skip, tolerance);
}

}  // namespace hse3s::world
