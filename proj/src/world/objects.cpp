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

#include "hse3s/world/objects.hpp"

#include <cmath>
#include <stdexcept>

#include "hse3s/geometry/convex.hpp"
#include "hse3s/rng.hpp"

namespace hse3s::world {

using geometry::Box;
using geometry::Composite;
using geometry::ConvexPiece;
using geometry::Cylinder;
using geometry::Part;

std::string_view ToString(Task t) {
  switch (t) {
    case Task::kBlocks:
      return "blocks";
    case Task::kMugs:
      return "mugs";
    case Task::kBottles:
      return "bottles";
  }
  return "?";
}

std::string_view ToString(Category c) {
  switch (c) {
    case Category::kBlock:
      return "block";
    case Category::kMug:
      return "mug";
    case Category::kBottle:
      return "bottle";
    case Category::kCoaster:
      return "coaster";
  }
  return "?";
}

Task ParseTask(std::string_view s) {
  if (s == "blocks") return Task::kBlocks;
  if (s == "mugs") return Task::kMugs;
  if (s == "bottles") return Task::kBottles;
  throw std::invalid_argument("unknown task '" + std::string(s) + "'");
}

Category ParseCategory(std::string_view s) {
  if (s == "block") return Category::kBlock;
  if (s == "mug") return Category::kMug;
  if (s == "bottle") return Category::kBottle;
  if (s == "coaster") return Category::kCoaster;
  throw std::invalid_argument("unknown category '" + std::string(s) + "'");
}

Shape MakeBlock(const Vec3& edges) { return Box{0.5 * edges}; }

Shape MakeMug(double radius, double height) {
  Composite c;
  c.parts.push_back(
      {Cylinder{radius, height}, Pose::Translation(0, 0, 0.5 * height)});
  const double handle_h = 0.6 * height;
  c.parts.push_back({Box{Vec3(0.01, 0.0075, 0.5 * handle_h)},
                     Pose::Translation(radius + 0.005, 0, 0.5 * height)});
  return c;
}

Shape MakeBottle(double body_radius, double body_height, double neck_radius,
                 double neck_height) {
  Composite c;
  c.parts.push_back({Cylinder{body_radius, body_height},
                     Pose::Translation(0, 0, 0.5 * body_height)});
  c.parts.push_back(
      {Cylinder{neck_radius, neck_height},
       Pose::Translation(0, 0, body_height + 0.5 * neck_height)});
  return c;
}

Shape MakeCoaster(double radius, double thickness) {
  Composite c;
  c.parts.push_back(
      {Cylinder{radius, thickness}, Pose::Translation(0, 0, 0.5 * thickness)});
  return c;
}

std::vector<Body> Bodies(std::span<const SceneObject> objects) {
  std::vector<Body> out;
  out.reserve(objects.size());
  for (const SceneObject& o : objects) out.push_back(o.body());
  return out;
}

Pose RestAt(const Shape& shape, const Pose& pose, double z) {
  const double low = geometry::LowestZ(Body{shape, pose});
  return Pose(pose.rotation(),
              pose.translation() + Vec3(0.0, 0.0, z - low));
}

bool AnyInterpenetration(std::span<const SceneObject> objects,
                         double tolerance) {
  std::vector<std::vector<ConvexPiece>> pieces;
  for (const SceneObject& o : objects) {
    pieces.push_back(geometry::ConvexPieces(o.body(), tolerance));
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (geometry::Intersects(pieces[i], pieces[j])) return true;
    }
  }
  return false;
}

namespace {

struct Spec {
  Category category;
  Shape shape;
  Pose orientation;
  double region;  // half-width of the placement square
};

Spec SampleBlock(Rng& rng, const SceneConfig& cfg) {
  Vec3 edges(Uniform(rng, cfg.block_edge_min, cfg.block_edge_max),
             Uniform(rng, cfg.block_edge_min, cfg.block_edge_max),
             Uniform(rng, cfg.block_edge_min, cfg.block_edge_max));
  return {Category::kBlock, MakeBlock(edges),
          Pose::RotZ(Uniform(rng, -M_PI, M_PI)), cfg.cluster_half};
}

Spec SampleMug(Rng& rng, const SceneConfig& cfg) {
  Shape shape = MakeMug(Uniform(rng, 0.03, 0.04), Uniform(rng, 0.07, 0.10));
  const double u = Uniform01(rng);
  Pose tilt;  // upright
  if (u < 0.15) {
    tilt = Pose::RotX(M_PI);
  } else if (u < 0.5) {
    tilt = Pose::RotX(M_PI / 2);
  }
  return {Category::kMug, shape,
          Pose::RotZ(Uniform(rng, -M_PI, M_PI)) * tilt, cfg.cluster_half};
}

Spec SampleBottle(Rng& rng, const SceneConfig& cfg) {
  Shape shape =
      MakeBottle(Uniform(rng, 0.025, 0.035), Uniform(rng, 0.10, 0.15),
                 Uniform(rng, 0.010, 0.013), Uniform(rng, 0.03, 0.05));
  Pose tilt;
  if (Uniform01(rng) < 0.5) tilt = Pose::RotX(M_PI / 2);
  return {Category::kBottle, shape,
          Pose::RotZ(Uniform(rng, -M_PI, M_PI)) * tilt, cfg.cluster_half};
}

}  // namespace

SampledScene SampleScene(Task task, std::uint64_t seed,
                         const SceneConfig& cfg) {
  Rng rng(DeriveSeed(seed, 0x5ce7e));
  std::vector<Spec> specs;
  switch (task) {
    case Task::kBlocks: {
      const int n = UniformInt(rng, cfg.blocks_min, cfg.blocks_max);
      for (int i = 0; i < n; ++i) specs.push_back(SampleBlock(rng, cfg));
      break;
    }
    case Task::kMugs: {
      const int n = UniformInt(rng, cfg.mugs_min, cfg.mugs_max);
      for (int i = 0; i < n; ++i) specs.push_back(SampleMug(rng, cfg));
      break;
    }
    case Task::kBottles: {
      for (int i = 0; i < cfg.coasters; ++i) {
        specs.push_back({Category::kCoaster, MakeCoaster(0.045, 0.005),
                         Pose(), cfg.cluster_half + 0.03});
      }
      const int n = UniformInt(rng, cfg.bottles_min, cfg.bottles_max);
      for (int i = 0; i < n; ++i) specs.push_back(SampleBottle(rng, cfg));
      break;
    }
  }

  SampledScene out;
  std::vector<std::vector<geometry::ConvexPiece>> placed_pieces;
  int rejections = 0;
  for (const Spec& spec : specs) {
    bool placed = false;
    while (!placed && rejections <= cfg.max_rejections) {
      const Vec3 xy(Uniform(rng, -spec.region, spec.region),
                    Uniform(rng, -spec.region, spec.region), 0.0);
      Pose pose = RestAt(spec.shape,
                         Pose(spec.orientation.rotation(), xy), 0.0);
      SceneObject obj{static_cast<int>(out.objects.size()), spec.category,
                      spec.shape, pose};
      // Bottles keep a small gap to coasters and everything else.
      const double inflate = spec.category == Category::kBottle ? -0.005 : 0.0;
      auto pieces = geometry::ConvexPieces(obj.body(), inflate);
      bool clear = true;
      for (const auto& other : placed_pieces) {
        if (geometry::Intersects(pieces, other)) {
          clear = false;
          break;
        }
      }
      if (!clear) {
        ++rejections;
        continue;
      }
      placed_pieces.push_back(geometry::ConvexPieces(obj.body()));
      out.objects.push_back(std::move(obj));
      placed = true;
    }
    if (!placed) {
      out.objects.resize(1);
      out.degenerate = true;
      return out;
    }
  }
  return out;
}

}  // namespace hse3s::world
