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

#ifndef HSE3S_GEOMETRY_SHAPE_HPP_
#define HSE3S_GEOMETRY_SHAPE_HPP_

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hse3s/geometry/pose.hpp"

namespace hse3s::geometry {

// Axis-aligned box centered at the local origin.
struct Box {
  Vec3 half_extents;
};

// Solid cylinder along the local z axis, centered at the origin.
struct Cylinder {
  double radius;
  double height;
};

struct Part;

// Rigid union of shapes. Nesting depth is limited to two.
struct Composite {
  std::vector<Part> parts;
};

class Shape {
 public:
  using Variant = std::variant<Box, Cylinder, Composite>;

  Shape(Box b);
  Shape(Cylinder c);
  Shape(Composite c);

  const Variant& variant() const { return v_; }
  bool is_box() const { return std::holds_alternative<Box>(v_); }
  bool is_cylinder() const { return std::holds_alternative<Cylinder>(v_); }
  bool is_composite() const { return std::holds_alternative<Composite>(v_); }
  const Box& box() const { return std::get<Box>(v_); }
  const Cylinder& cylinder() const { return std::get<Cylinder>(v_); }
  const Composite& composite() const { return std::get<Composite>(v_); }

  // 0 for primitives, 1 + max child depth for composites.
  int NestingDepth() const;

  // Radius of a sphere about the local origin enclosing the shape.
  double BoundingRadius() const;

 private:
  Variant v_;
};

struct Part {
  Shape shape;
  Pose pose;
};

// A shape placed in the world.
struct Body {
  Shape shape;
  Pose pose;
};

// Surface intersection along a ray, in the frame the ray was given in.
struct RayHit {
  double t = 0.0;
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::Zero();  // outward unit normal
};

// Nearest surface crossing at t >= 0 for a ray expressed in the shape's
// local frame. When the origin is inside, this is the exit point.
std::optional<RayHit> IntersectLocal(const Shape& shape, const Vec3& origin,
                                     const Vec3& dir);

std::optional<RayHit> Intersect(const Body& body, const Vec3& origin,
                                const Vec3& dir);

// Closed-set containment in the shape's local frame.
bool ContainsLocal(const Shape& shape, const Vec3& p);
bool Contains(const Body& body, const Vec3& p);

struct SceneHit {
  RayHit hit;
  int index = -1;
};

// Nearest hit over a list of bodies; ties go to the lowest index.
std::optional<SceneHit> RaycastDetailed(std::span<const Body> scene,
                                        const Vec3& origin, const Vec3& dir,
                                        double max_t = 1e30);

std::optional<Vec3> Raycast(std::span<const Body> scene, const Vec3& origin,
                            const Vec3& dir);

// A convex primitive with its pose in the world, the unit used by the
// collision routines.
struct ConvexPiece {
  Shape::Variant primitive;  // Box or Cylinder only
  Pose pose;
};

// Flattens a body into world-posed convex primitives. `erosion` shrinks each
// primitive uniformly (used to ignore grazing contact).
std::vector<ConvexPiece> ConvexPieces(const Body& body, double erosion = 0.0);

// Lowest world z over the body's surface.
double LowestZ(const Body& body);
double HighestZ(const Body& body);

void ValidateShape(const Shape& shape);

}  // namespace hse3s::geometry

#endif  // HSE3S_GEOMETRY_SHAPE_HPP_
