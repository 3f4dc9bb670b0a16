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

#include "hse3s/geometry/pose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace hse3s::geometry {

namespace {
constexpr double kDriftTolerance = 1e-9;
}  // namespace

Pose::Pose(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw std::invalid_argument("Pose: non-finite component");
  }
  if (OrthonormalityError(rotation) > 1e-6) {
    throw std::invalid_argument("Pose: rotation is not orthonormal");
  }
}

Pose Pose::AxisAngle(const Vec3& axis, double angle) {
  return Pose(Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix(),
              Vec3::Zero());
}

Pose Pose::Inverse() const {
  Mat3 rt = rotation_.transpose();
  return Pose(rt, -(rt * translation_));
}

Pose Compose(const Pose& a, const Pose& b) {
  Mat3 r = a.rotation() * b.rotation();
  if (OrthonormalityError(r) > kDriftTolerance) r = Reorthonormalize(r);
  return Pose(r, a.rotation() * b.translation() + a.translation());
}

double OrthonormalityError(const Mat3& r) {
  Mat3 e = r.transpose() * r - Mat3::Identity();
  return std::max(e.cwiseAbs().maxCoeff(), std::abs(r.determinant() - 1.0));
}

Mat3 Reorthonormalize(const Mat3& r) {
  Eigen::JacobiSVD<Mat3> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  Mat3 out = u * svd.matrixV().transpose();
  if (out.determinant() < 0) {
    u.col(2) *= -1.0;
    out = u * svd.matrixV().transpose();
  }
  return out;
}

double RotationAngle(const Mat3& a, const Mat3& b) {
  double c = 0.5 * ((a.transpose() * b).trace() - 1.0);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double PoseDistanceInf(const Pose& a, const Pose& b) {
  return std::max(
      (a.translation() - b.translation()).cwiseAbs().maxCoeff(),
      (a.rotation() - b.rotation()).cwiseAbs().maxCoeff());
}

Extent::Extent(const Vec3& lengths) : lengths_(lengths) {
  if (!(lengths.array() > 0.0).all() || !lengths.allFinite()) {
    throw std::invalid_argument("Extent: lengths must be positive");
  }
}

}  // namespace hse3s::geometry
