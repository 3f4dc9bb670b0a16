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

#include "hse3s/world/reward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hse3s::world {

namespace {

constexpr double kRadToDeg = 180.0 / M_PI;

Pose Lift(const Pose& p, double dz) {
  return Pose(p.rotation(), p.translation() + Vec3(0, 0, dz));
}

double Cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double SupportRadius(const Shape& shape) {
  if (shape.is_cylinder()) return shape.cylinder().radius;
  if (shape.is_composite()) return SupportRadius(shape.composite().parts[0].shape);
  throw std::invalid_argument("coaster shape has no cylinder");
}

}  // namespace

bool RewardSpec::RequiredMet() const {
  return std::all_of(required.begin(), required.end(),
                     [](const Condition& c) { return c.met; });
}

double RewardSpec::Value() const {
  if (!RequiredMet()) return 0.0;
  if (partial.empty()) return 1.0;
  const auto met = std::count_if(partial.begin(), partial.end(),
                                 [](const Condition& c) { return c.met; });
  return static_cast<double>(met) / static_cast<double>(partial.size());
}

bool RewardSpec::Met(const std::string& name) const {
  for (const auto* list : {&required, &partial}) {
    for (const Condition& c : *list) {
      if (c.name == name) return c.met;
    }
  }
  throw std::out_of_range("no reward condition named " + name);
}

RewardSpec GraspRewardSpec(const GraspAnalysis& a, bool collision_free,
                           const RewardConfig& cfg) {
  RewardSpec spec;
  spec.required = {{"antipodal", a.antipodal},
                   {"collision_free", collision_free}};
  spec.partial = {
      {"antipodal_half_cone",
       a.antipodal && a.max_angle_deg <= 0.5 * cfg.friction_half_angle_deg},
      {"separation_le_80pct",
       a.antipodal && a.separation <= 0.8 * cfg.max_width},
  };
  return spec;
}

Pose Settle(const SceneObject& object, std::span<const SceneObject> scene,
            int skip_index, double snap) {
  const Body body = object.body();
  const double gap_table = geometry::LowestZ(body);
  if (gap_table < 0.0) return object.pose;
  auto collides_at = [&](double drop) {
    const Body moved{object.shape, Lift(object.pose, -drop)};
    return BodiesCollide(std::span(&moved, 1), scene, skip_index, 0.0);
  };
  if (collides_at(0.0)) return object.pose;
  const double max_drop = std::min(snap, gap_table);
  if (!collides_at(max_drop)) {
    return gap_table <= snap ? Lift(object.pose, -gap_table) : object.pose;
  }
  double lo = 0.0, hi = max_drop;
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    (collides_at(mid) ? hi : lo) = mid;
  }
  return Lift(object.pose, -lo);
}

double PolygonArea(const Polygon& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    a += Cross2(p[i], p[(i + 1) % p.size()]);
  }
  return 0.5 * std::abs(a);
}

Polygon ClipConvex(const Polygon& subject, const Polygon& clip) {
  Polygon out = subject;
  for (std::size_t e = 0; e < clip.size() && !out.empty(); ++e) {
    const Eigen::Vector2d a = clip[e];
    const Eigen::Vector2d b = clip[(e + 1) % clip.size()];
    const Eigen::Vector2d edge = b - a;
    Polygon in = std::move(out);
    out.clear();
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Eigen::Vector2d p = in[i];
      const Eigen::Vector2d q = in[(i + 1) % in.size()];
      const double sp = Cross2(edge, p - a);
      const double sq = Cross2(edge, q - a);
      if (sp >= 0) out.push_back(p);
      if ((sp >= 0) != (sq >= 0)) {
        const double t = sp / (sp - sq);
        out.push_back(p + t * (q - p));
      }
    }
  }
  return out;
}

Polygon BoxFaceFootprint(const geometry::Box& box, const Pose& pose,
                         bool top) {
  int axis = 0;
  double sign = 1.0;
  double best = top ? -2.0 : 2.0;
  for (int i = 0; i < 3; ++i) {
    for (double s : {1.0, -1.0}) {
      const double nz = s * pose.rotation()(2, i);
      if (top ? nz > best : nz < best) {
        best = nz;
        axis = i;
        sign = s;
      }
    }
  }
  const int j = (axis + 1) % 3, k = (axis + 2) % 3;
  const Vec3 center =
      pose.translation() + sign * box.half_extents[axis] * pose.axis(axis);
  const Vec3 u = box.half_extents[j] * pose.axis(j);
  const Vec3 v = box.half_extents[k] * pose.axis(k);
  Polygon poly;
  for (auto [a, b] : {std::pair{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}) {
    const Vec3 c = center + a * u + b * v;
    poly.emplace_back(c.x(), c.y());
  }
  // Counter-clockwise.
  double signed_area = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    signed_area += Cross2(poly[i], poly[(i + 1) % poly.size()]);
  }
  if (signed_area < 0) std::reverse(poly.begin(), poly.end());
  return poly;
}

double AxisAlignedTiltDeg(const Pose& pose) {
  double best = 90.0;
  for (int i = 0; i < 3; ++i) {
    const double c = std::clamp(std::abs(pose.rotation()(2, i)), 0.0, 1.0);
    best = std::min(best, std::acos(c) * kRadToDeg);
  }
  return best;
}

double UprightTiltDeg(const Pose& pose) {
  return std::acos(std::clamp(pose.rotation()(2, 2), -1.0, 1.0)) * kRadToDeg;
}

PlaceOutcome EvaluatePlace(Task task, std::span<const SceneObject> scene,
                           const HeldObject& held, const Pose& release,
                           const GripperGeometry& gripper,
                           const RewardConfig& cfg, bool grasp_required_met) {
  PlaceOutcome out;
  SceneObject obj = scene[held.index];
  obj.pose = release * held.grasp;
  obj.pose = Settle(obj, scene, held.index, cfg.settle_snap);
  out.settled_pose = obj.pose;
  const Body body = obj.body();

  auto collides = [&](double lift) {
    std::vector<Body> bodies = GripperBodies(Lift(release, lift), gripper);
    bodies.push_back(Body{obj.shape, Lift(obj.pose, lift)});
    return BodiesCollide(bodies, scene, held.index);
  };
  const bool in_collision = collides(0.0);
  const bool clear_up = !collides(cfg.clear_lift);
  const bool cf_or_clear = !in_collision || clear_up;
  out.into_support = in_collision && !clear_up;
  const double low = geometry::LowestZ(body);

  RewardSpec& spec = out.spec;
  switch (task) {
    case Task::kBlocks: {
      double best_overlap = 0.0;
      double gap = std::numeric_limits<double>::infinity();
      if (obj.shape.is_box()) {
        const Polygon bottom = BoxFaceFootprint(obj.shape.box(), obj.pose,
                                                /*top=*/false);
        const double area = PolygonArea(bottom);
        for (std::size_t i = 0; i < scene.size(); ++i) {
          if (static_cast<int>(i) == held.index) continue;
          const SceneObject& s = scene[i];
          if (s.category != Category::kBlock || !s.shape.is_box()) continue;
          const Polygon top = BoxFaceFootprint(s.shape.box(), s.pose, true);
          const double frac = PolygonArea(ClipConvex(bottom, top)) / area;
          if (frac > best_overlap) {
            best_overlap = frac;
            gap = low - geometry::HighestZ(s.body());
          }
        }
      }
      const double tilt = AxisAlignedTiltDeg(obj.pose);
      out.over_support = best_overlap > 0.0;
      spec.required = {{"grasp", grasp_required_met},
                       {"on_block_within_2cm", std::abs(gap) <= 0.02},
                       {"overlap_gt_50pct", best_overlap > 0.5},
                       {"tilt_le_30deg", tilt <= 30.0},
                       {"collision_free_or_clear", cf_or_clear}};
      spec.partial = {{"tilt_le_15deg", tilt <= 15.0},
                      {"overlap_gt_75pct", best_overlap > 0.75},
                      {"collision_free", !in_collision}};
      break;
    }
    case Task::kMugs: {
      const double tilt = UprightTiltDeg(obj.pose);
      out.over_support = true;
      out.upside_down = tilt > 90.0;
      spec.required = {{"grasp", grasp_required_met},
                       {"upright_le_30deg", tilt <= 30.0},
                       {"height_le_4cm", low <= 0.04},
                       {"collision_free_or_clear", cf_or_clear}};
      spec.partial = {{"upright_le_15deg", tilt <= 15.0},
                      {"height_le_2cm", low <= 0.02},
                      {"collision_free", !in_collision}};
      break;
    }
    case Task::kBottles: {
      const double tilt = UprightTiltDeg(obj.pose);
      const Vec3 base = obj.pose.translation();
      bool above = false;
      double height = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < scene.size(); ++i) {
        const SceneObject& s = scene[i];
        if (s.category != Category::kCoaster) continue;
        const double r = SupportRadius(s.shape);
        const Vec3 d = base - s.pose.translation();
        if (std::hypot(d.x(), d.y()) > r) continue;
        above = true;
        height = std::min(height, low - geometry::HighestZ(s.body()));
      }
      out.over_support = above;
      out.upside_down = tilt > 90.0;
      spec.required = {{"grasp", grasp_required_met},
                       {"upright_le_30deg", tilt <= 30.0},
                       {"above_coaster", above},
                       {"height_le_4cm", above && height <= 0.04},
                       {"collision_free_or_clear", cf_or_clear}};
      spec.partial = {{"upright_le_15deg", tilt <= 15.0},
                      {"height_le_2cm", above && height <= 0.02},
                      {"collision_free", !in_collision}};
      break;
    }
  }
  return out;
}

double PlaceReward(Task task, std::span<const SceneObject> scene,
                   const HeldObject& held, const Pose& release,
                   const GripperGeometry& gripper, const RewardConfig& cfg) {
  return EvaluatePlace(task, scene, held, release, gripper, cfg).spec.Value();
}

}  // namespace hse3s::world
