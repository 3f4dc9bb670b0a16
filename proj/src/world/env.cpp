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

#include "hse3s/world/env.hpp"

#include <cmath>
#include <stdexcept>

namespace hse3s::world {

bool Workspace::Contains(const Vec3& p) const {
  return std::abs(p.x()) <= half_xy && std::abs(p.y()) <= half_xy &&
         p.z() >= z_min && p.z() <= z_max;
}

std::string_view ToString(Failure f) {
  switch (f) {
    case Failure::kNone:
      return "none";
    case Failure::kOutsideWorkspace:
      return "outside_workspace";
    case Failure::kEmptyCandidates:
      return "empty_candidates";
    case Failure::kMotionInfeasible:
      return "motion_infeasible";
    case Failure::kBadSequence:
      return "bad_sequence";
  }
  return "?";
}

std::vector<Body> VisibleBodies(const EnvState& state, const WorldConfig& cfg) {
  std::vector<Body> bodies;
  bodies.push_back(Body{
      geometry::Box{Vec3(cfg.table_half, cfg.table_half,
                         0.5 * cfg.table_thickness)},
      Pose::Translation(0, 0, -0.5 * cfg.table_thickness)});
  const int held = state.gripper.held ? state.gripper.held->index : -1;
  for (std::size_t i = 0; i < state.scene.size(); ++i) {
    if (static_cast<int>(i) != held) bodies.push_back(state.scene[i].body());
  }
  return bodies;
}

void Render(EnvState& state, const WorldConfig& cfg) {
  auto cameras = geometry::OpposingCameras(
      cfg.cameras.target, cfg.cameras.distance,
      cfg.cameras.elevation_deg * M_PI / 180.0, cfg.cameras.rows,
      cfg.cameras.cols);
  for (auto& c : cameras) c.fov_y = cfg.cameras.fov_deg * M_PI / 180.0;
  const std::vector<Body> bodies = VisibleBodies(state, cfg);
  state.cloud = geometry::RenderMerged(bodies, cameras);
}

namespace {

void ObserveInitial(EnvState& state, const WorldConfig& cfg) {
  state.gaze = cfg.initial_gaze;
  state.extent = Extent::Cube(cfg.initial_extent);
  state.i1 = geometry::HeightMaps(
      geometry::Crop(state.cloud, state.gaze, state.extent), state.extent,
      cfg.resolution);
}

Pose Lift(const Pose& p, double dz) {
  return Pose(p.rotation(), p.translation() + Vec3(0, 0, dz));
}

}  // namespace

EnvState SpawnScene(const WorldConfig& cfg, std::vector<SceneObject> objects) {
  EnvState state;
  state.scene = std::move(objects);
  state.gripper.geometry = cfg.gripper;
  state.i2 = HeightMapImage(cfg.resolution);
  Render(state, cfg);
  ObserveInitial(state, cfg);
  return state;
}

EnvState SpawnScene(const WorldConfig& cfg, std::uint64_t seed) {
  SampledScene sampled = SampleScene(cfg.task, seed, cfg.scene);
  EnvState state = SpawnScene(cfg, std::move(sampled.objects));
  state.degenerate = sampled.degenerate;
  return state;
}

bool Sense(EnvState& state, const WorldConfig& cfg, const Pose& gaze,
           const Extent& extent) {
  if (!cfg.workspace.Contains(gaze.translation())) {
    state.failure = Failure::kOutsideWorkspace;
    return false;
  }
  state.gaze = gaze;
  state.extent = extent;
  state.i1 = geometry::HeightMaps(geometry::Crop(state.cloud, gaze, extent),
                                  extent, cfg.resolution);
  ++state.step_index;
  return true;
}

bool ApproachClear(std::span<const Body> bodies,
                   std::span<const SceneObject> scene, int skip_index,
                   const WorldConfig& cfg) {
  std::vector<Body> lifted(bodies.begin(), bodies.end());
  const int steps = static_cast<int>(std::floor(
      (cfg.approach_height - cfg.approach_start) / cfg.approach_step + 1e-9));
  for (int k = 0; k <= steps; ++k) {
    const double dz = cfg.approach_start + k * cfg.approach_step;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      lifted[i].pose = Lift(bodies[i].pose, dz);
    }
    if (BodiesCollide(lifted, scene, skip_index)) return false;
  }
  return true;
}

EffectResult MoveEffect(EnvState& state, const WorldConfig& cfg,
                        EffectOp op) {
  EffectResult out;
  if (state.episode_done) throw std::logic_error("episode already finished");
  const bool closing = op == EffectOp::kClose;
  if (closing != (state.gripper.aperture == Aperture::kOpen)) {
    state.failure = Failure::kBadSequence;
    state.episode_done = true;
    return out;
  }
  state.i2 = state.i1;
  state.gripper.pose = state.gaze;
  ++state.step_index;

  if (closing) {
    const GraspAnalysis analysis =
        AnalyzeGrasp(state.scene, state.gaze, cfg.gripper.max_width,
                     cfg.reward.friction_half_angle_deg);
    out.antipodal = analysis.antipodal;
    out.collision_free = !CollisionCheck(state.scene, state.gaze, cfg.gripper);
    out.spec = GraspRewardSpec(analysis, out.collision_free, cfg.reward);
    state.gripper.aperture = Aperture::kClosed;
    if (out.spec.RequiredMet()) {
      const auto bodies = GripperBodies(state.gaze, cfg.gripper);
      out.feasible = ApproachClear(bodies, state.scene, -1, cfg);
    }
    if (!out.spec.RequiredMet() || !out.feasible) {
      if (!out.feasible) state.failure = Failure::kMotionInfeasible;
      state.episode_done = true;
      return out;
    }
    out.reward = out.spec.Value();
    const SceneObject& obj = state.scene[analysis.object_index];
    state.gripper.held =
        HeldObject{analysis.object_index, state.gaze.Inverse() * obj.pose};
    state.phase = Phase::kPlace;
    Render(state, cfg);
    ObserveInitial(state, cfg);
    return out;
  }

  const HeldObject held = *state.gripper.held;
  PlaceOutcome place = EvaluatePlace(cfg.task, state.scene, held, state.gaze,
                                     cfg.gripper, cfg.reward);
  out.collision_free = place.spec.Met("collision_free");
  std::vector<Body> bodies = GripperBodies(state.gaze, cfg.gripper);
  bodies.push_back(
      Body{state.scene[held.index].shape, state.gaze * held.grasp});
  out.feasible = ApproachClear(bodies, state.scene, held.index, cfg);
  out.spec = place.spec;
  out.reward = out.feasible ? place.spec.Value() : 0.0;
  if (!out.feasible) state.failure = Failure::kMotionInfeasible;
  state.scene[held.index].pose = place.settled_pose;
  state.gripper.held.reset();
  state.gripper.aperture = Aperture::kOpen;
  out.place = std::move(place);
  state.episode_done = true;
  return out;
}

}  // namespace hse3s::world
