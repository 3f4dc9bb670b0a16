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

#ifndef HSE3S_GEOMETRY_CONVEX_HPP_
#define HSE3S_GEOMETRY_CONVEX_HPP_

#include <span>

#include "hse3s/geometry/shape.hpp"

namespace hse3s::geometry {

// Farthest point of the piece along `dir` (world frame).
Vec3 Support(const ConvexPiece& piece, const Vec3& dir);

// Boolean GJK. Touching counts as intersecting.
bool Intersects(const ConvexPiece& a, const ConvexPiece& b);

bool Intersects(std::span<const ConvexPiece> a,
                std::span<const ConvexPiece> b);

// Conservative sphere around a piece (center, radius).
struct Sphere {
  Vec3 center;
  double radius;
};
Sphere BoundingSphere(const ConvexPiece& piece);

}  // namespace hse3s::geometry

#endif  // HSE3S_GEOMETRY_CONVEX_HPP_
