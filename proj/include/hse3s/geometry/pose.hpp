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

#ifndef HSE3S_GEOMETRY_POSE_HPP_
#define HSE3S_GEOMETRY_POSE_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace hse3s::geometry {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Rigid transform in SE(3). Maps points from the local frame into the parent
// frame: p_parent = rotation * p_local + translation.
class Pose {
 public:
  Pose() : rotation_(Mat3::Identity()), translation_(Vec3::Zero()) {}
  Pose(const Mat3& rotation, const Vec3& translation);

  static Pose Identity() { return Pose(); }
  static Pose Translation(const Vec3& t) { return Pose(Mat3::Identity(), t); }
  static Pose Translation(double x, double y, double z) {
    return Translation(Vec3(x, y, z));
  }
  static Pose Rotation(const Mat3& r) { return Pose(r, Vec3::Zero()); }
  static Pose AxisAngle(const Vec3& axis, double angle);
  static Pose RotX(double angle) { return AxisAngle(Vec3::UnitX(), angle); }
  static Pose RotY(double angle) { return AxisAngle(Vec3::UnitY(), angle); }
  static Pose RotZ(double angle) { return AxisAngle(Vec3::UnitZ(), angle); }

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  // Column i of the rotation: the i-th local axis expressed in the parent.
  Vec3 axis(int i) const { return rotation_.col(i); }

  Vec3 Apply(const Vec3& p) const { return rotation_ * p + translation_; }
  Vec3 ApplyDirection(const Vec3& d) const { return rotation_ * d; }
  Pose Inverse() const;

  bool operator==(const Pose& other) const {
    return rotation_ == other.rotation_ && translation_ == other.translation_;
  }

 private:
  Mat3 rotation_;
  Vec3 translation_;
};

// Applies b, then a.
Pose Compose(const Pose& a, const Pose& b);
inline Pose operator*(const Pose& a, const Pose& b) { return Compose(a, b); }

// ||R^T R - I||_inf, plus the distance of det(R) from +1.
double OrthonormalityError(const Mat3& r);

// Nearest rotation in the Frobenius sense (polar decomposition).
Mat3 Reorthonormalize(const Mat3& r);

// Geodesic angle between two rotations, radians in [0, pi].
double RotationAngle(const Mat3& a, const Mat3& b);

// Max-norm distance between two poses: max(|dt|_inf, |dR|_inf).
double PoseDistanceInf(const Pose& a, const Pose& b);

// Rectangular observation volume: full side lengths in meters.
class Extent {
 public:
  explicit Extent(const Vec3& lengths);
  Extent(double x, double y, double z) : Extent(Vec3(x, y, z)) {}
  static Extent Cube(double side) { return Extent(side, side, side); }

  const Vec3& lengths() const { return lengths_; }
  double operator[](int i) const { return lengths_[i]; }
  double Volume() const { return lengths_.prod(); }
  Vec3 half() const { return 0.5 * lengths_; }

  bool operator==(const Extent& o) const { return lengths_ == o.lengths_; }

 private:
  Vec3 lengths_;
};

}  // namespace hse3s::geometry

#endif  // HSE3S_GEOMETRY_POSE_HPP_
