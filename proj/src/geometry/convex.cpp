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

#include "hse3s/geometry/convex.hpp"

#include <array>
#include <cmath>

namespace hse3s::geometry {

Vec3 Support(const ConvexPiece& piece, const Vec3& dir) {
  const Mat3& r = piece.pose.rotation();
  const Vec3 local = r.transpose() * dir;
  Vec3 p;
  if (const Box* b = std::get_if<Box>(&piece.primitive)) {
    for (int i = 0; i < 3; ++i) {
      p[i] = local[i] >= 0.0 ? b->half_extents[i] : -b->half_extents[i];
    }
  } else {
    const Cylinder& c = std::get<Cylinder>(piece.primitive);
    const double radial = std::hypot(local.x(), local.y());
    if (radial > 1e-12) {
      p.x() = c.radius * local.x() / radial;
      p.y() = c.radius * local.y() / radial;
    } else {
      p.x() = 0.0;
      p.y() = 0.0;
    }
    p.z() = local.z() >= 0.0 ? 0.5 * c.height : -0.5 * c.height;
  }
  return piece.pose.Apply(p);
}

Sphere BoundingSphere(const ConvexPiece& piece) {
  double radius;
  if (const Box* b = std::get_if<Box>(&piece.primitive)) {
    radius = b->half_extents.norm();
  } else {
    const Cylinder& c = std::get<Cylinder>(piece.primitive);
    radius = std::hypot(c.radius, 0.5 * c.height);
  }
  return {piece.pose.translation(), radius};
}

namespace {

// Simplex points, newest first.
struct Simplex {
  std::array<Vec3, 4> pts;
  int size = 0;
  void PushFront(const Vec3& p) {
    for (int i = size; i > 0; --i) pts[i] = pts[i - 1];
    pts[0] = p;
    ++size;
  }
  void Set(std::initializer_list<Vec3> list) {
    size = 0;
    for (const Vec3& p : list) pts[size++] = p;
  }
};

bool SameDirection(const Vec3& a, const Vec3& b) { return a.dot(b) > 0.0; }

bool Line(Simplex& s, Vec3& dir) {
  const Vec3 a = s.pts[0], b = s.pts[1];
  const Vec3 ab = b - a, ao = -a;
  if (SameDirection(ab, ao)) {
    dir = ab.cross(ao).cross(ab);
  } else {
    s.Set({a});
    dir = ao;
  }
  return false;
}

bool Triangle(Simplex& s, Vec3& dir) {
  const Vec3 a = s.pts[0], b = s.pts[1], c = s.pts[2];
  const Vec3 ab = b - a, ac = c - a, ao = -a;
  const Vec3 abc = ab.cross(ac);
  if (SameDirection(abc.cross(ac), ao)) {
    if (SameDirection(ac, ao)) {
      s.Set({a, c});
      dir = ac.cross(ao).cross(ac);
    } else {
      s.Set({a, b});
      return Line(s, dir);
    }
  } else {
    if (SameDirection(ab.cross(abc), ao)) {
      s.Set({a, b});
      return Line(s, dir);
    }
    const double side = abc.dot(ao);
    if (side > 0.0) {
      dir = abc;
    } else if (side < 0.0) {
      s.Set({a, c, b});
      dir = -abc;
    } else {
      return true;  // origin lies in the triangle
    }
  }
  return false;
}

bool Tetrahedron(Simplex& s, Vec3& dir) {
  const Vec3 a = s.pts[0], b = s.pts[1], c = s.pts[2], d = s.pts[3];
  const Vec3 ab = b - a, ac = c - a, ad = d - a, ao = -a;
  const Vec3 abc = ab.cross(ac);
  const Vec3 acd = ac.cross(ad);
  const Vec3 adb = ad.cross(ab);
  if (SameDirection(abc, ao)) {
    s.Set({a, b, c});
    return Triangle(s, dir);
  }
  if (SameDirection(acd, ao)) {
    s.Set({a, c, d});
    return Triangle(s, dir);
  }
  if (SameDirection(adb, ao)) {
    s.Set({a, d, b});
    return Triangle(s, dir);
  }
  return true;
}

bool NextSimplex(Simplex& s, Vec3& dir) {
  switch (s.size) {
    case 2:
      return Line(s, dir);
    case 3:
      return Triangle(s, dir);
    case 4:
      return Tetrahedron(s, dir);
  }
  return false;
}

Vec3 MinkowskiSupport(const ConvexPiece& a, const ConvexPiece& b,
                      const Vec3& dir) {
  return Support(a, dir) - Support(b, -dir);
}

}  // namespace

bool Intersects(const ConvexPiece& a, const ConvexPiece& b) {
  const Sphere sa = BoundingSphere(a), sb = BoundingSphere(b);
  const double reach = sa.radius + sb.radius;
  if ((sa.center - sb.center).squaredNorm() > reach * reach) return false;

  Vec3 dir = sb.center - sa.center;
  if (dir.squaredNorm() < 1e-24) dir = Vec3::UnitX();
  Simplex s;
  s.PushFront(MinkowskiSupport(a, b, dir));
  dir = -s.pts[0];
  for (int iter = 0; iter < 96; ++iter) {
    if (dir.squaredNorm() < 1e-28) return true;
    const Vec3 p = MinkowskiSupport(a, b, dir);
    if (p.dot(dir) < 0.0) return false;
    s.PushFront(p);
    if (NextSimplex(s, dir)) return true;
  }
  // No progress: the shapes are touching to within rounding.
  return true;
}

bool Intersects(std::span<const ConvexPiece> a,
                std::span<const ConvexPiece> b) {
  for (const ConvexPiece& pa : a) {
    for (const ConvexPiece& pb : b) {
      if (Intersects(pa, pb)) return true;
    }
  }
  return false;
}

}  // namespace hse3s::geometry
