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

#include "hse3s/geometry/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hse3s::geometry {

Pose LookAt(const Vec3& eye, const Vec3& target) {
  const Vec3 z = (target - eye).normalized();
  Vec3 x = z.cross(Vec3::UnitZ());
  if (x.squaredNorm() < 1e-12) x = Vec3::UnitX();
  x.normalize();
  const Vec3 y = z.cross(x);
  Mat3 r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return Pose(r, eye);
}

PointCloud RenderCloud(std::span<const Body> scene, const Pose& viewpoint,
                       int rows, int cols, double fov_y) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("RenderCloud: rows and cols must be >= 1");
  }
  PointCloud cloud;
  if (scene.empty()) return cloud;
  const double tan_half = std::tan(0.5 * fov_y);
  const double aspect = static_cast<double>(cols) / rows;
  const Vec3 origin = viewpoint.translation();
  cloud.points.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    const double v = (2.0 * (r + 0.5) / rows - 1.0) * tan_half;
    for (int c = 0; c < cols; ++c) {
      const double u = (2.0 * (c + 0.5) / cols - 1.0) * tan_half * aspect;
      const Vec3 dir = viewpoint.ApplyDirection(Vec3(u, v, 1.0).normalized());
      if (auto p = Raycast(scene, origin, dir)) cloud.points.push_back(*p);
    }
  }
  return cloud;
}

PointCloud RenderCloud(std::span<const Body> scene, const Camera& camera) {
  return RenderCloud(scene, camera.pose, camera.rows, camera.cols,
                     camera.fov_y);
}

PointCloud RenderMerged(std::span<const Body> scene,
                        std::span<const Camera> cameras) {
  PointCloud merged;
  for (const Camera& cam : cameras) {
    PointCloud view = RenderCloud(scene, cam);
    merged.points.insert(merged.points.end(), view.points.begin(),
                         view.points.end());
  }
  return merged;
}

std::vector<Camera> OpposingCameras(const Vec3& target, double distance,
                                    double elevation, int rows, int cols) {
  std::vector<Camera> cams;
  for (double side : {1.0, -1.0}) {
    const Vec3 eye = target + distance * Vec3(side * std::cos(elevation), 0.0,
                                              std::sin(elevation));
    Camera cam;
    cam.pose = LookAt(eye, target);
    cam.rows = rows;
    cam.cols = cols;
    cams.push_back(cam);
  }
  return cams;
}

PointCloud Crop(const PointCloud& cloud, const Pose& gaze,
                const Extent& extent) {
  // cloud frame -> gaze frame
  const Pose to_gaze = gaze.Inverse() * cloud.frame;
  const Mat3& r = to_gaze.rotation();
  const Vec3& t = to_gaze.translation();
  const Vec3 half = extent.half();
  PointCloud out;
  out.frame = gaze;
  for (const Vec3& p : cloud.points) {
    const Vec3 q = r * p + t;
    if (std::abs(q.x()) <= half.x() && std::abs(q.y()) <= half.y() &&
        std::abs(q.z()) <= half.z()) {
      out.points.push_back(q);
    }
  }
  return out;
}

HeightMapImage::HeightMapImage(int resolution)
    : resolution_(resolution),
      data_(static_cast<std::size_t>(kChannels) * resolution * resolution,
            0.0) {
  if (resolution < 1) {
    throw std::invalid_argument("HeightMapImage: resolution must be >= 1");
  }
}

bool HeightMapImage::AllZero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return v == 0.0; });
}

int CellIndex(double u, double length, int resolution) {
  const int i = static_cast<int>(std::floor((u / length + 0.5) * resolution));
  return std::clamp(i, 0, resolution - 1);
}

HeightMapImage HeightMaps(const PointCloud& cloud, const Extent& extent,
                          int resolution) {
  HeightMapImage img(resolution);
  const Vec3& len = extent.lengths();
  // (row axis, col axis, height axis) per channel.
  static constexpr int kAxes[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
  for (const Vec3& p : cloud.points) {
    for (int ch = 0; ch < 3; ++ch) {
      const int ra = kAxes[ch][0], ca = kAxes[ch][1], ha = kAxes[ch][2];
      const int row = CellIndex(p[ra], len[ra], resolution);
      const int col = CellIndex(p[ca], len[ca], resolution);
      const double h = std::clamp(p[ha] / len[ha] + 0.5, 0.0, 1.0);
      double& cell = img.at(ch, row, col);
      cell = std::max(cell, h);
    }
  }
  return img;
}

}  // namespace hse3s::geometry
