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

#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "hse3s/rng.hpp"
#include "hse3s/world/env.hpp"
#include "hse3s/world/gripper.hpp"
#include "hse3s/world/objects.hpp"
#include "hse3s/world/reward.hpp"
#include "hse3s/world/snapshot.hpp"
#include "oracles/oracles.hpp"

namespace hse3s::world {
namespace {

constexpr double kDeg = M_PI / 180.0;

SceneObject Block(int id, const Vec3& edges, const Pose& pose) {
  return SceneObject{id, Category::kBlock, MakeBlock(edges), pose};
}

// A 2 cm block alone at the table center.
std::vector<SceneObject> IsolatedBlock() {
  return {Block(0, Vec3::Constant(0.02), Pose::Translation(0, 0, 0.01))};
}

TEST(SceneTest, DeterministicPerSeed) {
  const SampledScene a = SampleScene(Task::kBlocks, 7);
  const SampledScene b = SampleScene(Task::kBlocks, 7);
  ASSERT_EQ(a.objects.size(), b.objects.size());
  for (std::size_t i = 0; i < a.objects.size(); ++i) {
    EXPECT_EQ(a.objects[i].pose, b.objects[i].pose);
  }
  EXPECT_EQ(SnapshotString(a.objects), SnapshotString(b.objects));
  EXPECT_NE(SnapshotString(a.objects),
            SnapshotString(SampleScene(Task::kBlocks, 8).objects));
}

TEST(SceneTest, BottlesHaveThreeCoasters) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SampledScene s = SampleScene(Task::kBottles, seed);
    int coasters = 0, bottles = 0;
    for (const auto& o : s.objects) {
      coasters += o.category == Category::kCoaster;
      bottles += o.category == Category::kBottle;
    }
    EXPECT_EQ(coasters, 3);
    EXPECT_GE(bottles, 1);
    EXPECT_LE(bottles, 3);
  }
}

TEST(SceneTest, BlockCountsSpanRangeWithoutOverlap) {
  std::set<int> counts;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const SampledScene s = SampleScene(Task::kBlocks, seed);
    counts.insert(static_cast<int>(s.objects.size()));
    EXPECT_FALSE(AnyInterpenetration(s.objects)) << "seed " << seed;
    for (const auto& o : s.objects) {
      EXPECT_NEAR(geometry::LowestZ(o.body()), 0.0, 1e-12);
    }
  }
  EXPECT_EQ(*counts.begin(), 2);
  EXPECT_EQ(*counts.rbegin(), 10);
  EXPECT_EQ(counts.size(), 9u);
}

TEST(SceneTest, MugsInRange) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto n = SampleScene(Task::kMugs, seed).objects.size();
    EXPECT_GE(n, 1u);
    EXPECT_LE(n, 5u);
  }
}

TEST(SceneTest, PlacementFailureDegenerates) {
  SceneConfig cfg;
  cfg.blocks_min = cfg.blocks_max = 10;
  cfg.cluster_half = 0.001;
  cfg.max_rejections = 5;
  const SampledScene s = SampleScene(Task::kBlocks, 3, cfg);
  EXPECT_TRUE(s.degenerate);
  EXPECT_EQ(s.objects.size(), 1u);
}

TEST(SenseTest, FullViewNonzeroIffSceneNonempty) {
  WorldConfig cfg;
  EnvState empty = SpawnScene(cfg, std::vector<SceneObject>{});
  EnvState full = SpawnScene(cfg, 11);
  const Extent all(0.4, 0.4, 0.36);
  ASSERT_TRUE(Sense(empty, cfg, cfg.initial_gaze, all));
  ASSERT_TRUE(Sense(full, cfg, cfg.initial_gaze, all));
  EXPECT_TRUE(empty.i1.AllZero());
  EXPECT_FALSE(full.i1.AllZero());
  EXPECT_TRUE(full.i2.AllZero());  // nothing before a move-effect yet
}

TEST(SenseTest, StaticEnvironment) {
  WorldConfig cfg;
  EnvState s = SpawnScene(cfg, 12);
  const std::string before = SnapshotString(s.scene);
  const Pose g = Pose::Translation(0.01, -0.02, 0.05);
  ASSERT_TRUE(Sense(s, cfg, g, Extent::Cube(0.09)));
  const HeightMapImage first = s.i1;
  ASSERT_TRUE(Sense(s, cfg, g, Extent::Cube(0.09)));
  EXPECT_EQ(s.i1, first);
  EXPECT_EQ(SnapshotString(s.scene), before);
}

TEST(SenseTest, OutsideWorkspaceRejected) {
  WorldConfig cfg;
  EnvState s = SpawnScene(cfg, 13);
  const HeightMapImage i1 = s.i1;
  const Pose gaze = s.gaze;
  EXPECT_FALSE(Sense(s, cfg, Pose::Translation(0.3, 0, 0.1), Extent::Cube(0.09)));
  EXPECT_EQ(s.failure, Failure::kOutsideWorkspace);
  EXPECT_EQ(s.i1, i1);
  EXPECT_EQ(s.gaze, gaze);
}

TEST(SenseTest, ZoomKeepsFewerPoints) {
  WorldConfig cfg;
  EnvState s = SpawnScene(cfg, IsolatedBlock());
  const Pose g = Pose::Translation(0, 0, 0.01);
  std::size_t prev = std::numeric_limits<std::size_t>::max();
  int prev_pixels = 0;
  for (double side : {0.36, 0.18, 0.09}) {
    const auto cropped = geometry::Crop(s.cloud, g, Extent::Cube(side));
    EXPECT_LT(cropped.size(), prev);
    prev = cropped.size();
    // Pixels covered by the block's top in the overhead channel.
    const auto img = geometry::HeightMaps(cropped, Extent::Cube(side), 64);
    int pixels = 0;
    for (int r = 0; r < 64; ++r) {
      for (int c = 0; c < 64; ++c) {
        pixels += img.at(0, r, c) > 0.5 + 0.005 / side;
      }
    }
    EXPECT_GE(pixels, prev_pixels);
    prev_pixels = pixels;
  }
}

TEST(GraspTest, AntipodalAstrideAndAngled) {
  const auto scene = IsolatedBlock();
  const Pose astride = Pose::Translation(0, 0, 0.01);
  EXPECT_TRUE(AntipodalCheck(scene, astride, 0.085, 10));
  const Pose angled(Pose::RotZ(45 * kDeg).rotation(), Vec3(0, 0, 0.01));
  EXPECT_FALSE(AntipodalCheck(scene, angled, 0.085, 10));
  const Pose beside = Pose::Translation(0.2, 0, 0.01);
  EXPECT_FALSE(AntipodalCheck(scene, beside, 0.085, 10));
}

TEST(GraspTest, SeparationLimit) {
  const std::vector<SceneObject> wide{
      Block(0, Vec3(0.04, 0.07, 0.04), Pose::Translation(0, 0, 0.02))};
  const Pose g = Pose::Translation(0, 0, 0.02);
  EXPECT_TRUE(AntipodalCheck(wide, g, 0.085, 10));
  EXPECT_FALSE(AntipodalCheck(wide, g, 0.065, 10));
}

TEST(CollisionTest, HighAboveEmptyTable) {
  const std::vector<SceneObject> none;
  EXPECT_FALSE(CollisionCheck(none, Pose::Translation(0, 0, 1), {}));
  EXPECT_TRUE(CollisionCheck(none, Pose::Translation(0, 0, 0.005), {}));
}

TEST(CollisionTest, FingerOverlap) {
  GripperGeometry g;
  // Right finger's inner face sits at y = max_width/2.
  const double inner = g.max_width / 2;
  const auto block_at = [&](double overlap) {
    const double half = 0.01;
    return std::vector<SceneObject>{Block(
        0, Vec3::Constant(2 * half),
        Pose::Translation(0, inner + overlap - half, 0.05))};
  };
  const Pose gaze = Pose::Translation(0, 0, 0.05);
  EXPECT_TRUE(CollisionCheck(block_at(0.005), gaze, g));
  EXPECT_FALSE(CollisionCheck(block_at(-0.005), gaze, g));
  // Touching is not collision.
  EXPECT_FALSE(CollisionCheck(block_at(0.0), gaze, g));
}

TEST(CollisionTest, AgreesWithSampledOracle) {
  Rng rng(21);
  const std::vector<SceneObject> scene{
      Block(0, Vec3(0.04, 0.03, 0.05), Pose::Translation(0, 0, 0.025)),
      SceneObject{1, Category::kMug, MakeMug(0.035, 0.09),
                  Pose::Translation(0.08, 0.02, 0)}};
  std::vector<Body> bodies = Bodies(scene);
  int decided = 0;
  for (int i = 0; i < 150; ++i) {
    const Vec3 axis = Vec3(Uniform(rng, -1, 1), Uniform(rng, -1, 1),
                           Uniform(rng, -1, 1)).normalized();
    const Pose g(Pose::AxisAngle(axis, Uniform(rng, 0, M_PI)).rotation(),
                 Vec3(Uniform(rng, -0.1, 0.15), Uniform(rng, -0.1, 0.1),
                      Uniform(rng, 0.0, 0.15)));
    const auto v = oracle::CollisionOracle(bodies, g, {}, kContactTolerance, 0.002);
    if (v == oracle::Verdict::kAmbiguous) continue;
    ++decided;
    EXPECT_EQ(CollisionCheck(scene, g, {}), v == oracle::Verdict::kTrue)
        << "pose " << i;
  }
  EXPECT_GT(decided, 100);
}

// The oracle must notice when the checker uses a different friction cone.
TEST(GraspTest, OracleCatchesFrictionMutation) {
  const std::vector<SceneObject> scene{
      Block(0, Vec3(0.04, 0.04, 0.04), Pose::Translation(0, 0, 0.02))};
  const std::vector<Body> bodies = Bodies(scene);
  int mismatches = 0, agreements = 0;
  for (double yaw = 0.0; yaw < 30.0; yaw += 1.0) {
    const Pose g(Pose::RotZ(yaw * kDeg).rotation(), Vec3(0, 0, 0.02));
    const auto v = oracle::AntipodalOracle(bodies, g, 0.085, 10, 1e-4, 0.5);
    if (v == oracle::Verdict::kAmbiguous) continue;
    const bool truth = v == oracle::Verdict::kTrue;
    agreements += AntipodalCheck(scene, g, 0.085, 10) == truth;
    mismatches += AntipodalCheck(scene, g, 0.085, 20) != truth;
  }
  EXPECT_EQ(agreements, 29);  // 10 degrees itself is ambiguous
  EXPECT_EQ(mismatches, 10);  // yaws 11..20
}

TEST(RewardSpecTest, RequiredAndPartial) {
  RewardSpec spec;
  spec.required = {{"a", true}, {"b", true}};
  spec.partial = {{"c", true}, {"d", false}, {"e", false}};
  EXPECT_DOUBLE_EQ(spec.Value(), 1.0 / 3.0);
  spec.required[1].met = false;
  EXPECT_DOUBLE_EQ(spec.Value(), 0.0);
  EXPECT_TRUE(spec.Met("c"));
  EXPECT_THROW(spec.Met("zzz"), std::exception);
}

TEST(MoveEffectTest, CloseOnEmptySpace) {
  WorldConfig cfg;
  EnvState s = SpawnScene(cfg, IsolatedBlock());
  ASSERT_TRUE(Sense(s, cfg, Pose::Translation(0.15, 0.15, 0.05),
                    Extent::Cube(0.09)));
  const EffectResult r = MoveEffect(s, cfg, EffectOp::kClose);
  EXPECT_EQ(r.reward, 0.0);
  EXPECT_FALSE(s.gripper.held);
  EXPECT_TRUE(s.episode_done);
}

TEST(MoveEffectTest, IsolatedBlockFullReward) {
  WorldConfig cfg;
  EnvState s = SpawnScene(cfg, IsolatedBlock());
  ASSERT_TRUE(Sense(s, cfg, Pose::Translation(0, 0, 0.012), Extent::Cube(0.09)));
  const HeightMapImage before = s.i1;
  const EffectResult r = MoveEffect(s, cfg, EffectOp::kClose);
  EXPECT_TRUE(r.antipodal);
  EXPECT_TRUE(r.collision_free);
  EXPECT_DOUBLE_EQ(r.reward, 1.0);
  ASSERT_TRUE(s.gripper.held);
  EXPECT_EQ(s.gripper.held->index, 0);
  EXPECT_EQ(s.gripper.aperture, Aperture::kClosed);
  EXPECT_EQ(s.phase, Phase::kPlace);
  EXPECT_FALSE(s.episode_done);
  EXPECT_EQ(s.i2, before);  // snapshot taken just before the effect

  // The held block leaves the rendered view.
  EXPECT_TRUE(s.i1 != before);
  const EffectResult p = MoveEffect(s, cfg, EffectOp::kOpen);
  EXPECT_TRUE(p.place.has_value());
  EXPECT_TRUE(s.episode_done);
  EXPECT_FALSE(s.gripper.held);
  EXPECT_EQ(s.gripper.aperture, Aperture::kOpen);
  EXPECT_THROW(MoveEffect(s, cfg, EffectOp::kClose), std::logic_error);
}

TEST(MoveEffectTest, OpenBeforeCloseIsRejected) {
  WorldConfig cfg;
  EnvState s = SpawnScene(cfg, IsolatedBlock());
  const EffectResult r = MoveEffect(s, cfg, EffectOp::kOpen);
  EXPECT_EQ(r.reward, 0.0);
  EXPECT_EQ(s.failure, Failure::kBadSequence);
  EXPECT_TRUE(s.episode_done);
}

TEST(MoveEffectTest, DeterministicTrajectory) {
  WorldConfig cfg;
  auto run = [&] {
    EnvState s = SpawnScene(cfg, 99);
    Sense(s, cfg, Pose::Translation(0.02, 0.01, 0.02), Extent::Cube(0.09));
    const EffectResult r = MoveEffect(s, cfg, EffectOp::kClose);
    return std::make_pair(s.i2.data(), r.reward);
  };
  EXPECT_EQ(run(), run());
}

struct BottleFixture {
  static constexpr double kBodyH = 0.14;
  std::vector<SceneObject> scene{
      SceneObject{0, Category::kCoaster, MakeCoaster(0.05, 0.005), Pose()},
      SceneObject{1, Category::kBottle, MakeBottle(0.03, kBodyH, 0.012, 0.05),
                  Pose::Translation(0.1, 0.1, 0)}};
  // Held at the neck; the object frame is the bottle's base center.
  HeldObject held{1, Pose::Translation(0, 0, -(kBodyH + 0.02))};
};

TEST(PlaceTest, UprightBottleOnCoaster) {
  BottleFixture f;
  const Pose release = Pose::Translation(0, 0, 0.005 + 0.01 + BottleFixture::kBodyH + 0.02);
  const PlaceOutcome out = EvaluatePlace(Task::kBottles, f.scene, f.held,
                                         release, {}, {});
  EXPECT_DOUBLE_EQ(out.spec.Value(), 1.0);
  EXPECT_NEAR(geometry::LowestZ(Body{f.scene[1].shape, out.settled_pose}),
              0.005, 1e-12);
}

TEST(PlaceTest, UpsideDownBottle) {
  BottleFixture f;
  f.held.grasp = Pose(Pose::RotX(M_PI).rotation(), Vec3(0, 0, 0.16));
  const PlaceOutcome out = EvaluatePlace(Task::kBottles, f.scene, f.held,
                                         Pose::Translation(0, 0, 0.05), {}, {});
  EXPECT_EQ(out.spec.Value(), 0.0);
  EXPECT_TRUE(out.upside_down);
}

TEST(PlaceTest, TiltedBlockOnBlock) {
  // 4 cm blocks; the held one tilted 10 degrees about x, offset 1 cm in x,
  // released 5 mm above the lower block's top so it settles onto it.
  const double tilt = 10 * kDeg;
  const std::vector<SceneObject> scene{
      Block(0, Vec3::Constant(0.04), Pose::Translation(0, 0, 0.02)),
      Block(1, Vec3::Constant(0.04), Pose::Translation(0.2, 0.2, 0.02))};
  const HeldObject held{1, Pose::RotX(tilt)};
  const double drop = 0.02 * (std::cos(tilt) + std::sin(tilt));
  const Pose release = Pose::Translation(0.01, 0, 0.04 + 0.005 + drop);
  const PlaceOutcome out =
      EvaluatePlace(Task::kBlocks, scene, held, release, {}, {});

  // Hand evaluation: the held bottom face projects to 4 cm by 4cos(10) cm,
  // centered at x = 1 cm and y = 2sin(10) cm; the lower top face is
  // [-2, 2]^2 cm.
  const double fy = 0.02 * std::cos(tilt);
  const double cy = 0.02 * std::sin(tilt);
  const double overlap =
      (0.02 - (0.01 - 0.02)) * (0.02 - (cy - fy)) / (0.04 * 2 * fy);
  ASSERT_GT(overlap, 0.5);
  ASSERT_LT(overlap, 0.75);
  EXPECT_NEAR(geometry::LowestZ(Body{scene[1].shape, out.settled_pose}), 0.04,
              1e-12);
  EXPECT_TRUE(out.spec.RequiredMet());
  EXPECT_TRUE(out.spec.Met("tilt_le_15deg"));
  EXPECT_FALSE(out.spec.Met("overlap_gt_75pct"));
  EXPECT_TRUE(out.spec.Met("collision_free"));
  EXPECT_DOUBLE_EQ(out.spec.Value(), 2.0 / 3.0);
}

TEST(PlaceTest, MugPlacement) {
  const std::vector<SceneObject> scene{
      SceneObject{0, Category::kMug, MakeMug(0.035, 0.09), Pose()}};
  const HeldObject held{0, Pose::Translation(0, 0, -0.05)};
  const double upright = PlaceReward(Task::kMugs, scene, held,
                                     Pose::Translation(0, 0, 0.06), {}, {});
  EXPECT_DOUBLE_EQ(upright, 1.0);
  const double high = PlaceReward(Task::kMugs, scene, held,
                                  Pose::Translation(0, 0, 0.08), {}, {});
  EXPECT_DOUBLE_EQ(high, 2.0 / 3.0);  // 3 cm up: fails the 2 cm partial
}

TEST(SnapshotTest, RoundTrip) {
  for (Task t : {Task::kBlocks, Task::kMugs, Task::kBottles}) {
    const auto objects = SampleScene(t, 5).objects;
    const std::string text = SnapshotString(objects);
    const auto back = ParseSnapshot(text);
    ASSERT_EQ(back.size(), objects.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      EXPECT_EQ(back[i].id, objects[i].id);
      EXPECT_EQ(back[i].category, objects[i].category);
      EXPECT_EQ(back[i].pose, objects[i].pose);
    }
    EXPECT_EQ(SnapshotString(back), text);
  }
}

TEST(SnapshotTest, BadLineNamed) {
  try {
    ParseSnapshot("0 block box 0.01 0.01 0.01 1 0 0 0 1 0 0 0 1 0 0 0\n"
                  "1 block sphere 0.01\n");
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
}

TEST(TaskTest, Names) {
  EXPECT_EQ(ParseTask("bottles"), Task::kBottles);
  EXPECT_EQ(ToString(Task::kMugs), "mugs");
  EXPECT_THROW(ParseTask("cups"), std::invalid_argument);
}

}  // namespace
}  // namespace hse3s::world
