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

#include "hse3s/geometry/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hse3s/geometry/convex.hpp"

namespace hse3s::geometry {

namespace {

constexpr double kParallelEps = 1e-15;

std::optional<RayHit> IntersectBox(const Box& box, const Vec3& o,
                                   const Vec3& d) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  int near_axis = -1, far_axis = -1;
  for (int i = 0; i < 3; ++i) {
    const double h = box.half_extents[i];
    if (std::abs(d[i]) < kParallelEps) {
      if (o[i] < -h || o[i] > h) return std::nullopt;
      continue;
    }
    double t1 = (-h - o[i]) / d[i];
    double t2 = (h - o[i]) / d[i];
    if (t1 > t2) std::swap(t1, t2);
    if (t1 > t_near) {
      t_near = t1;
      near_axis = i;
    }
    if (t2 < t_far) {
      t_far = t2;
      far_axis = i;
    }
  }
  if (t_near > t_far || t_far < 0.0) return std::nullopt;
  RayHit hit;
  int axis;
  if (t_near >= 0.0 && near_axis >= 0) {
    axis = near_axis;
    hit.t = t_near;
    hit.normal = Vec3::Zero();
    hit.normal[axis] = d[axis] > 0 ? -1.0 : 1.0;
  } else {
    if (far_axis < 0) return std::nullopt;
    axis = far_axis;
    hit.t = t_far;
    hit.normal = Vec3::Zero();
    hit.normal[axis] = d[axis] > 0 ? 1.0 : -1.0;
  }
  hit.point = o + hit.t * d;
  // Snap the hit coordinate onto its face so later containment is exact.
  hit.point[axis] = hit.normal[axis] * box.half_extents[axis];
  return hit;
}

std::optional<RayHit> IntersectCylinder(const Cylinder& cyl, const Vec3& o,
                                        const Vec3& d) {
  const double r = cyl.radius;
  const double hz = 0.5 * cyl.height;
  double best = std::numeric_limits<double>::infinity();
  Vec3 best_normal = Vec3::Zero();

  const double a = d.x() * d.x() + d.y() * d.y();
  if (a > kParallelEps) {
    const double b = 2.0 * (o.x() * d.x() + o.y() * d.y());
    const double c = o.x() * o.x() + o.y() * o.y() - r * r;
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (b + (b >= 0 ? sq : -sq));
      double roots[2] = {q / a, q != 0.0 ? c / q : q / a};
      for (double t : roots) {
        if (t < 0.0 || t >= best) continue;
        const double z = o.z() + t * d.z();
        if (z < -hz || z > hz) continue;
        best = t;
        Vec3 p = o + t * d;
        best_normal = Vec3(p.x(), p.y(), 0.0).normalized();
      }
    }
  }
  if (std::abs(d.z()) > kParallelEps) {
    for (double zc : {-hz, hz}) {
      const double t = (zc - o.z()) / d.z();
      if (t < 0.0 || t >= best) continue;
      const double x = o.x() + t * d.x();
      const double y = o.y() + t * d.y();
      if (x * x + y * y > r * r) continue;
      best = t;
      best_normal = Vec3(0.0, 0.0, zc > 0 ? 1.0 : -1.0);
    }
  }
  if (!std::isfinite(best)) return std::nullopt;
  RayHit hit;
  hit.t = best;
  hit.point = o + best * d;
  hit.normal = best_normal;
  return hit;
}

std::optional<RayHit> IntersectComposite(const Composite& comp,
                                         const Vec3& o, const Vec3& d) {
  std::optional<RayHit> best;
  for (const Part& part : comp.parts) {
    const Mat3 rt = part.pose.rotation().transpose();
    Vec3 lo = rt * (o - part.pose.translation());
    Vec3 ld = rt * d;
    auto hit = IntersectLocal(part.shape, lo, ld);
    if (!hit) continue;
    if (!best || hit->t < best->t) {
      hit->point = part.pose.Apply(hit->point);
      hit->normal = part.pose.ApplyDirection(hit->normal);
      best = hit;
    }
  }
  return best;
}

}  // namespace

Shape::Shape(Box b) : v_(std::move(b)) {}
Shape::Shape(Cylinder c) : v_(std::move(c)) {}
Shape::Shape(Composite c) : v_(std::move(c)) {}

int Shape::NestingDepth() const {
  if (!is_composite()) return 0;
  int depth = 0;
  for (const Part& p : composite().parts) {
    depth = std::max(depth, p.shape.NestingDepth());
  }
  return depth + 1;
}

double Shape::BoundingRadius() const {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return s.half_extents.norm();
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return std::hypot(s.radius, 0.5 * s.height);
        } else {
          double r = 0.0;
          for (const Part& p : s.parts) {
            r = std::max(r, p.pose.translation().norm() +
                                p.shape.BoundingRadius());
          }
          return r;
        }
      },
      v_);
}

void ValidateShape(const Shape& shape) {
  if (shape.NestingDepth() > 2) {
    throw std::invalid_argument("Shape: composite nesting deeper than 2");
  }
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          if (!(s.half_extents.array() > 0.0).all()) {
            throw std::invalid_argument("Box: non-positive half extent");
          }
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          if (!(s.radius > 0.0) || !(s.height > 0.0)) {
            throw std::invalid_argument("Cylinder: non-positive dimension");
          }
        } else {
          if (s.parts.empty()) {
            throw std::invalid_argument("Composite: no parts");
          }
          for (const Part& p : s.parts) ValidateShape(p.shape);
        }
      },
      shape.variant());
}

std::optional<RayHit> IntersectLocal(const Shape& shape, const Vec3& origin,
                                     const Vec3& dir) {
  return std::visit(
      [&](const auto& s) -> std::optional<RayHit> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return IntersectBox(s, origin, dir);
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return IntersectCylinder(s, origin, dir);
        } else {
          return IntersectComposite(s, origin, dir);
        }
      },
      shape.variant());
}

std::optional<RayHit> Intersect(const Body& body, const Vec3& origin,
                                const Vec3& dir) {
  const Mat3 rt = body.pose.rotation().transpose();
  auto hit = IntersectLocal(body.shape,
                            rt * (origin - body.pose.translation()), rt * dir);
  if (!hit) return hit;
  hit->point = body.pose.Apply(hit->point);
  hit->normal = body.pose.ApplyDirection(hit->normal);
  return hit;
}

bool ContainsLocal(const Shape& shape, const Vec3& p) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return (p.cwiseAbs().array() <= s.half_extents.array()).all();
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return p.x() * p.x() + p.y() * p.y() <= s.radius * s.radius &&
                 std::abs(p.z()) <= 0.5 * s.height;
        } else {
          for (const Part& part : s.parts) {
            if (ContainsLocal(part.shape, part.pose.Inverse().Apply(p))) {
              return true;
            }
          }
          return false;
        }
      },
      shape.variant());
}

bool Contains(const Body& body, const Vec3& p) {
  return ContainsLocal(body.shape, body.pose.Inverse().Apply(p));
}

std::optional<SceneHit> RaycastDetailed(std::span<const Body> scene,
                                        const Vec3& origin, const Vec3& dir,
                                        double max_t) {
  std::optional<SceneHit> best;
  double best_t = max_t;
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const Body& body = scene[i];
    // Bounding-sphere rejection.
    const Vec3 oc = body.pose.translation() - origin;
    const double radius = body.shape.BoundingRadius();
    const double along = oc.dot(dir);
    const double perp2 = oc.squaredNorm() - along * along;
    if (perp2 > radius * radius) continue;
    if (along + radius < 0.0) continue;
    if (along - radius > best_t) continue;
    auto hit = Intersect(body, origin, dir);
    if (!hit || hit->t > best_t) continue;
    if (!best || hit->t < best->hit.t) {
      best = SceneHit{*hit, static_cast<int>(i)};
      best_t = hit->t;
    }
  }
  return best;
}

std::optional<Vec3> Raycast(std::span<const Body> scene, const Vec3& origin,
                            const Vec3& dir) {
  auto hit = RaycastDetailed(scene, origin, dir);
  if (!hit) return std::nullopt;
  return hit->hit.point;
}

namespace {

void CollectPieces(const Shape& shape, const Pose& pose, double erosion,
                   std::vector<ConvexPiece>& out) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          Box b{(s.half_extents.array() - erosion).max(1e-6).matrix()};
          out.push_back({b, pose});
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          Cylinder c{std::max(s.radius - erosion, 1e-6),
                     std::max(s.height - 2.0 * erosion, 1e-6)};
          out.push_back({c, pose});
        } else {
          for (const Part& p : s.parts) {
            CollectPieces(p.shape, pose * p.pose, erosion, out);
          }
        }
      },
      shape.variant());
}

}  // namespace

std::vector<ConvexPiece> ConvexPieces(const Body& body, double erosion) {
  std::vector<ConvexPiece> out;
  CollectPieces(body.shape, body.pose, erosion, out);
  return out;
}

double LowestZ(const Body& body) {
  double z = std::numeric_limits<double>::infinity();
  for (const ConvexPiece& piece : ConvexPieces(body)) {
    z = std::min(z, Support(piece, -Vec3::UnitZ()).z());
  }
  return z;
}

double HighestZ(const Body& body) {
  double z = -std::numeric_limits<double>::infinity();
  for (const ConvexPiece& piece : ConvexPieces(body)) {
    z = std::max(z, Support(piece, Vec3::UnitZ()).z());
  }
  return z;
}

}  // namespace hse3s::geometry
