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

#ifndef HSE3S_GEOMETRY_SENSING_HPP_
#define HSE3S_GEOMETRY_SENSING_HPP_

#include <cmath>
#include <span>
#include <vector>

#include "hse3s/geometry/pose.hpp"
#include "hse3s/geometry/shape.hpp"

namespace hse3s::geometry {

// Points expressed in `frame` (frame maps them into the world).
struct PointCloud {
  std::vector<Vec3> points;
  Pose frame;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

// Pinhole depth camera looking along its local +z axis.
struct Camera {
  Pose pose;
  int rows = 240;
  int cols = 240;
  double fov_y = 50.0 * M_PI / 180.0;
};

// Camera pose at `eye` looking at `target`, right-handed, +z forward.
Pose LookAt(const Vec3& eye, const Vec3& target);

// One ray per pixel; hit points are returned in the world frame, misses are
// omitted.
PointCloud RenderCloud(std::span<const Body> scene, const Pose& viewpoint,
                       int rows, int cols,
                       double fov_y = 50.0 * M_PI / 180.0);
PointCloud RenderCloud(std::span<const Body> scene, const Camera& camera);

// Concatenation of all views, in the world frame.
PointCloud RenderMerged(std::span<const Body> scene,
                        std::span<const Camera> cameras);

// Two cameras at `elevation` above the table on opposite sides of `target`.
std::vector<Camera> OpposingCameras(const Vec3& target, double distance,
                                    double elevation, int rows, int cols);

// Points inside the closed box of `extent` centered on `gaze`, expressed in
// the gaze frame.
PointCloud Crop(const PointCloud& cloud, const Pose& gaze,
                const Extent& extent);

// Three fixed-resolution height maps of a cropped cloud. Channel 0 projects
// along z onto (x rows, y cols), channel 1 along y onto (x rows, z cols),
// channel 2 along x onto (y rows, z cols). Each cell holds the largest
// coordinate along the projection axis, mapped from [-e/2, e/2] to [0, 1];
// empty cells are 0.
class HeightMapImage {
 public:
  static constexpr int kChannels = 3;

  HeightMapImage() = default;
  explicit HeightMapImage(int resolution);

  int resolution() const { return resolution_; }
  double at(int channel, int row, int col) const {
    return data_[Index(channel, row, col)];
  }
  double& at(int channel, int row, int col) {
    return data_[Index(channel, row, col)];
  }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }
  bool AllZero() const;

  bool operator==(const HeightMapImage& o) const {
    return resolution_ == o.resolution_ && data_ == o.data_;
  }

 private:
  std::size_t Index(int channel, int row, int col) const {
    return (static_cast<std::size_t>(channel) * resolution_ + row) *
               resolution_ +
           col;
  }

  int resolution_ = 0;
  std::vector<double> data_;
};

// Cell index of coordinate u in [-e/2, e/2] at the given resolution.
int CellIndex(double u, double length, int resolution);

HeightMapImage HeightMaps(const PointCloud& cloud, const Extent& extent,
                          int resolution);

}  // namespace hse3s::geometry

#endif  // HSE3S_GEOMETRY_SENSING_HPP_
