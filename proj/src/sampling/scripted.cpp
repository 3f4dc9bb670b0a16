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

#include "hse3s/sampling/scripted.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace hse3s::sampling {

using world::EnvState;
using world::WorldConfig;

void ConstantScorer::Score(const LevelContext&, std::span<Candidate> c) {
  for (Candidate& x : c) x.value = value_;
}

double GazeDistance(const Pose& a, const Pose& b, double rot_weight) {
  return (a.translation() - b.translation()).norm() +
         rot_weight * geometry::RotationAngle(a.rotation(), b.rotation());
}

namespace {

double NearestDistance(const Pose& gaze, std::span<const Pose> targets,
                       double rot_weight) {
  double best = std::numeric_limits<double>::infinity();
  for (const Pose& t : targets) {
    best = std::min(best, GazeDistance(gaze, t, rot_weight));
  }
  return best;
}

Pose TopDown(const Vec3& closing, const Vec3& position) {
  const Vec3 y = Vec3(closing.x(), closing.y(), 0.0).normalized();
  const Vec3 z = Vec3::UnitZ();
  geometry::Mat3 r;
  r.col(0) = y.cross(z);
  r.col(1) = y;
  r.col(2) = z;
  return Pose(r, position);
}

}  // namespace

void TargetScorer::Score(const LevelContext&, std::span<Candidate> c) {
  for (Candidate& x : c) {
    x.value = -NearestDistance(x.gaze, targets_, rot_weight_);
  }
}

std::vector<Pose> IdealGraspPoses(const EnvState& env, const WorldConfig& cfg) {
  std::vector<Pose> out;
  const double min_line = cfg.gripper.tip_margin + 0.003;
  for (const world::SceneObject& obj : env.scene) {
    const double top = geometry::HighestZ(obj.body());
    if (obj.shape.is_box()) {
      const Vec3& h = obj.shape.box().half_extents;
      const Vec3 c = obj.pose.translation();
      const double z = std::min(std::max(c.z(), min_line), top - 0.003);
      for (int a = 0; a < 3; ++a) {
        const Vec3 axis = obj.pose.axis(a);
        if (std::abs(axis.z()) > 0.5) continue;
        if (2 * h[a] > 0.8 * cfg.gripper.max_width) continue;
        for (double s : {1.0, -1.0}) {
          out.push_back(TopDown(s * axis, Vec3(c.x(), c.y(), z)));
        }
      }
    } else if (obj.shape.is_composite()) {
      const auto& body = obj.shape.composite().parts[0];
      if (!body.shape.is_cylinder()) continue;
      const Pose frame = obj.pose * body.pose;
      if (frame.axis(2).z() < 0.9) continue;
      const auto& cyl = body.shape.cylinder();
      if (2 * cyl.radius > 0.8 * cfg.gripper.max_width) continue;
      const Vec3 c = frame.translation();
      const double z = std::min(std::max(c.z(), min_line), top - 0.003);
      for (int k = 0; k < 8; ++k) {
        const double yaw = k * M_PI / 4;
        out.push_back(
            TopDown(Vec3(std::cos(yaw), std::sin(yaw), 0), Vec3(c.x(), c.y(), z)));
      }
    }
  }
  return out;
}

std::vector<Pose> IdealPlacePoses(const EnvState& env, const WorldConfig& cfg) {
  std::vector<Pose> out;
  if (!env.gripper.held) return out;
  const world::HeldObject& held = *env.gripper.held;
  const world::SceneObject& obj = env.scene[held.index];
  const Pose inv_grasp = held.grasp.Inverse();
  constexpr double kGap = 0.004;
  for (std::size_t i = 0; i < env.scene.size(); ++i) {
    if (static_cast<int>(i) == held.index) continue;
    const world::SceneObject& s = env.scene[i];
    const double top = geometry::HighestZ(s.body());
    if (cfg.task == world::Task::kBlocks &&
        s.category == world::Category::kBlock) {
      const Pose centered(obj.pose.rotation(), Vec3::Zero());
      const double below = -geometry::LowestZ(geometry::Body{obj.shape, centered});
      const Vec3 p(s.pose.translation().x(), s.pose.translation().y(),
                   top + below + kGap);
      out.push_back(Pose(obj.pose.rotation(), p) * inv_grasp);
    } else if (cfg.task == world::Task::kBottles &&
               s.category == world::Category::kCoaster) {
      for (int k = 0; k < 4; ++k) {
        const Pose o = Pose(Pose::RotZ(k * M_PI / 2).rotation(),
                            Vec3(s.pose.translation().x(),
                                 s.pose.translation().y(), top + kGap));
        out.push_back(o * inv_grasp);
      }
    }
  }
  return out;
}

double PoseNoise(const Pose& pose, std::uint64_t seed) {
  std::uint64_t h = SplitMix64(seed);
  for (int i = 0; i < 3; ++i) {
    h = SplitMix64(h ^ std::bit_cast<std::uint64_t>(pose.translation()[i]));
    for (int j = 0; j < 3; ++j) {
      h = SplitMix64(h ^ std::bit_cast<std::uint64_t>(pose.rotation()(i, j)));
    }
  }
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

double RewardAt(const EnvState& env, const WorldConfig& cfg, const Pose& gaze) {
  if (!cfg.workspace.Contains(gaze.translation())) return 0.0;
  if (!env.gripper.held) {
    const world::GraspAnalysis a =
        world::AnalyzeGrasp(env.scene, gaze, cfg.gripper.max_width,
                            cfg.reward.friction_half_angle_deg);
    const bool cf = !world::CollisionCheck(env.scene, gaze, cfg.gripper);
    const world::RewardSpec spec = world::GraspRewardSpec(a, cf, cfg.reward);
    if (!spec.RequiredMet()) return 0.0;
    const auto bodies = world::GripperBodies(gaze, cfg.gripper);
    return world::ApproachClear(bodies, env.scene, -1, cfg) ? spec.Value() : 0.0;
  }
  const world::HeldObject& held = *env.gripper.held;
  const world::PlaceOutcome out = world::EvaluatePlace(
      cfg.task, env.scene, held, gaze, cfg.gripper, cfg.reward);
  if (!out.spec.RequiredMet()) return 0.0;
  std::vector<geometry::Body> bodies = world::GripperBodies(gaze, cfg.gripper);
  bodies.push_back(geometry::Body{env.scene[held.index].shape, gaze * held.grasp});
  return world::ApproachClear(bodies, env.scene, held.index, cfg)
             ? out.spec.Value()
             : 0.0;
}

void OracleScorer::Score(const LevelContext& ctx, std::span<Candidate> c) {
  if (ctx.last()) {
    for (Candidate& x : c) x.value = RewardAt(ctx.env, ctx.world, x.gaze);
  } else {
    const std::vector<Pose> targets =
        ctx.env.gripper.held ? IdealPlacePoses(ctx.env, ctx.world)
                             : IdealGraspPoses(ctx.env, ctx.world);
    for (Candidate& x : c) {
      x.value = targets.empty()
                    ? 0.0
                    : -NearestDistance(x.gaze, targets, rot_weight_);
    }
  }
  if (noise_ > 0) {
    for (Candidate& x : c) x.value += noise_ * PoseNoise(x.gaze, seed_);
  }
}

}  // namespace hse3s::sampling
