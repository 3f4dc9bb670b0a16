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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only NAME]... [--strict] [--list]
//
// Exits 0 once every selected criterion has run (failures are reported,
// not fatal) unless --strict is given; any exception is fatal.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hse3s/cli/commands.hpp"
#include "hse3s/learn/evaluator.hpp"
#include "hse3s/learn/labels.hpp"
#include "hse3s/learn/qscorer.hpp"
#include "hse3s/learn/stats.hpp"
#include "hse3s/nn/weights_io.hpp"
#include "hse3s/sampling/schedule.hpp"
#include "hse3s/sampling/scripted.hpp"
#include "hse3s/world/env.hpp"
#include "oracles/oracles.hpp"

namespace {

using namespace hse3s;
using geometry::Pose;
using geometry::Vec3;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

Pose RandomRotation(Rng& rng) {
  // Uniform unit quaternion.
  const double u1 = Uniform01(rng), u2 = Uniform01(rng), u3 = Uniform01(rng);
  const Eigen::Quaterniond q(std::sqrt(u1) * std::cos(2 * M_PI * u3),
                             std::sqrt(1 - u1) * std::sin(2 * M_PI * u2),
                             std::sqrt(1 - u1) * std::cos(2 * M_PI * u2),
                             std::sqrt(u1) * std::sin(2 * M_PI * u3));
  return Pose::Rotation(q.normalized().toRotationMatrix());
}

// ------------------------------------------------------------------------

Outcome SampleComplexity() {
  Rng rng(101);
  int checked = 0, snapped = 0, bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const double v0 = std::exp(Uniform(rng, std::log(1e-6), std::log(1.0)));
    const double ratio = std::exp(Uniform(rng, std::log(1e-3), std::log(1e9)));
    const double alpha = v0 / ratio;
    const double r = v0 / alpha;
    if (std::abs(r - std::round(r)) <= sampling::kRatioSnap * r) {
      ++snapped;  // degenerate: treated as the integer by design
      continue;
    }
    ++checked;
    // Exact: smallest n with n * alpha >= v0, in 113-bit arithmetic.
    std::int64_t n = oracle::CeilByStepping(static_cast<long double>(v0) / alpha);
    while (static_cast<__float128>(n) * alpha < v0) ++n;
    while (n > 1 && static_cast<__float128>(n - 1) * alpha >= v0) --n;
    const int t = sampling::LevelsNeeded(v0, alpha);
    // Powers of 8 scale exactly in binary floating point.
    const bool boundary =
        (t == 0 ? v0 <= alpha
                : std::ldexp(alpha, 3 * (t - 1)) < v0 && v0 <= std::ldexp(alpha, 3 * t));
    if (sampling::FlatSamplesNeeded(v0, alpha) != n ||
        t != oracle::LevelsByPowers(static_cast<long double>(v0) / alpha) ||
        !boundary) {
      ++bad;
    }
  }
  // Exact cases: cube sides, integer ratios, and the paper-style example.
  struct Case {
    double v0, alpha;
    std::int64_t flat;
    int levels;
  };
  const Case cases[] = {
      {0.36 * 0.36 * 0.36, 0.045 * 0.045 * 0.045, 512, 3},
      {0.36 * 0.36 * 0.36, 0.09 * 0.09 * 0.09, 64, 2},
      {1.0, 1.0, 1, 0},
      {1.0, 2.0, 1, 0},
      {8.0, 1.0, 8, 1},
      {9.0, 1.0, 9, 2},
      {64.0, 1.0, 64, 2},
      {65.0, 1.0, 65, 3},
  };
  for (const Case& c : cases) {
    if (sampling::FlatSamplesNeeded(c.v0, c.alpha) != c.flat ||
        sampling::LevelsNeeded(c.v0, c.alpha) != c.levels) {
      ++bad;
    }
  }
  return {bad == 0, Fmt("%d random pairs + %zu exact cases, %d mismatches "
                        "(%d near-integer ratios snapped)",
                        checked, std::size(cases), bad, snapped)};
}

Outcome HeightMapOracle() {
  Rng rng(202);
  int bad_pixels = 0, perm_bad = 0;
  long pixels = 0;
  for (int i = 0; i < 200; ++i) {
    const int res = 8 << UniformInt(rng, 0, 3);
    const Vec3 ext(Uniform(rng, 0.02, 0.5), Uniform(rng, 0.02, 0.5),
                   Uniform(rng, 0.02, 0.5));
    geometry::PointCloud cloud;
    const int n = UniformInt(rng, 0, 400);
    for (int k = 0; k < n; ++k) {
      Vec3 p;
      for (int a = 0; a < 3; ++a) {
        p[a] = Uniform(rng, -0.5, 0.5) * ext[a];
        if (Uniform01(rng) < 0.03) p[a] = (Uniform01(rng) < 0.5 ? -0.5 : 0.5) * ext[a];
      }
      cloud.points.push_back(p);
    }
    const geometry::Extent extent(ext);
    const auto img = geometry::HeightMaps(cloud, extent, res);
    const auto ref = oracle::BruteForceHeightMaps(cloud.points, ext, res);
    for (std::size_t k = 0; k < img.data().size(); ++k) {
      bad_pixels += img.data()[k] != ref.data()[k];
    }
    pixels += static_cast<long>(img.data().size());
    for (int s = 0; s < 3; ++s) {
      geometry::PointCloud shuffled = cloud;
      std::shuffle(shuffled.points.begin(), shuffled.points.end(), rng);
      perm_bad += !(geometry::HeightMaps(shuffled, extent, res) == img);
    }
  }
  return {bad_pixels == 0 && perm_bad == 0,
          Fmt("200 clouds, %ld pixels, %d differ from brute force; %d of 600 "
              "permutations changed the image",
              pixels, bad_pixels, perm_bad)};
}

// One shape class: random gripper poses around a single object, compared
// against the sampling oracles.
struct ShapeClass {
  const char* name;
  world::SceneObject object;
};

Outcome GraspOracles() {
  using world::SceneObject;
  const world::GripperGeometry g;
  const world::RewardConfig rc;
  oracle::OracleGripper og;
  og.max_width = g.max_width;
  og.finger_depth = g.finger_depth;
  og.finger_thickness = g.finger_thickness;
  og.finger_width = g.finger_width;
  og.tip_margin = g.tip_margin;
  og.palm_thickness = g.palm_thickness;

  const double h = 0.001, ang = 0.5;
  std::vector<ShapeClass> classes = {
      {"box", {0, world::Category::kBlock, world::MakeBlock(Vec3(0.04, 0.03, 0.05)),
               Pose::Translation(0, 0, 0.025) * Pose::RotZ(0.3)}},
      {"cylinder", {0, world::Category::kCoaster,
                    geometry::Cylinder{0.025, 0.08}, Pose::Translation(0, 0, 0.04)}},
      {"mug", {0, world::Category::kMug, world::MakeMug(0.035, 0.09),
               Pose::RotZ(1.0)}},
      {"bottle", {0, world::Category::kBottle,
                  world::MakeBottle(0.03, 0.14, 0.012, 0.05), Pose::Identity()}},
  };
  Rng rng(303);
  std::string detail;
  bool pass = true;
  for (const ShapeClass& sc : classes) {
    const std::vector<SceneObject> scene = {sc.object};
    const std::vector<geometry::Body> bodies = {sc.object.body()};
    const double lo = geometry::LowestZ(bodies[0]), hi = geometry::HighestZ(bodies[0]);
    const Vec3 c = sc.object.pose.translation() + Vec3(0, 0, 0.5 * (hi + lo));
    int n = 0, ambiguous = 0, a_dis = 0, c_dis = 0, a_true = 0, c_true = 0;
    while (n < 500) {
      Pose pose;
      if (Uniform01(rng) < 0.5) {
        // Near-aligned: closing axis within 20 degrees of an object axis,
        // approach from a random side.
        const int axis = UniformInt(rng, 0, 1);
        const Pose base = sc.object.pose * Pose::RotZ(axis * M_PI / 2) *
                          Pose::RotY(Uniform(rng, -M_PI, M_PI));
        pose = Pose(base.rotation(), c + Vec3(Uniform(rng, -0.02, 0.02),
                                              Uniform(rng, -0.02, 0.02),
                                              Uniform(rng, -0.04, 0.04))) *
               Pose::AxisAngle(Vec3(Uniform(rng, -1, 1), Uniform(rng, -1, 1),
                                    Uniform(rng, -1, 1)).normalized(),
                               Uniform(rng, 0, 20) * M_PI / 180);
      } else {
        pose = Pose::Translation(c + Vec3(Uniform(rng, -0.06, 0.06),
                                          Uniform(rng, -0.06, 0.06),
                                          Uniform(rng, -0.06, 0.06))) *
               RandomRotation(rng);
      }
      const auto ao = oracle::AntipodalOracle(bodies, pose, g.max_width,
                                              rc.friction_half_angle_deg, h, ang);
      const auto co = oracle::CollisionOracle(bodies, pose, og,
                                              world::kContactTolerance, h);
      if (ao == oracle::Verdict::kAmbiguous || co == oracle::Verdict::kAmbiguous) {
        ++ambiguous;
        continue;
      }
      ++n;
      const bool a = world::AntipodalCheck(scene, pose, g.max_width,
                                           rc.friction_half_angle_deg);
      const bool col = world::CollisionCheck(scene, pose, g);
      a_dis += a != (ao == oracle::Verdict::kTrue);
      c_dis += col != (co == oracle::Verdict::kTrue);
      a_true += a;
      c_true += col;
    }
    pass = pass && a_dis == 0 && c_dis == 0;
    detail += Fmt("%s: %d/%d antipodal, %d/%d collision disagreements "
                  "(%d antipodal, %d colliding, %d ambiguous skipped); ",
                  sc.name, a_dis, n, c_dis, n, a_true, c_true, ambiguous);
  }
  return {pass, detail};
}

Outcome GradientCorrectness() {
  Rng rng(404);
  double worst = 0.0;
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    nn::Arch arch;
    if (i > 0) {
      arch.resolution = 8 * UniformInt(rng, 2, 4);
      arch.convs = {{UniformInt(rng, 2, 6), UniformInt(rng, 2, 4), UniformInt(rng, 1, 2)}};
      if (UniformInt(rng, 0, 1)) arch.convs.push_back({UniformInt(rng, 2, 6), 3, 2});
      arch.hidden.assign(UniformInt(rng, 1, 2), UniformInt(rng, 4, 16));
      arch.rectify = i % 4 != 3;
    }
    nn::QFunction q = nn::Init(arch, 1000 + i);
    // Fresh nets have zero biases, which puts dead units exactly on the ReLU
    // kink where no derivative exists; random biases move them off it.
    for (const auto& seg : nn::Layout(arch)) {
      if (!seg.is_bias) continue;
      for (std::size_t k = 0; k < seg.size; ++k) {
        q.params[static_cast<Eigen::Index>(seg.offset + k)] = Uniform(rng, -0.1, 0.1);
      }
    }
    std::vector<double> img(arch.ImageSize());
    const bool second_zero = i % 2 == 0;  // I2 empty as at the first step
    for (std::size_t k = 0; k < img.size(); ++k) {
      img[k] = (second_zero && k >= img.size() / 2) ? 0.0
                                                     : (Uniform01(rng) < 0.3 ? 0.0 : Uniform01(rng));
    }
    nn::Sample s{img, {}, Uniform(rng, -1, 2)};
    for (double& a : s.action) a = Uniform(rng, -1, 1);
    const nn::LossGrad lg = nn::Gradient(q, std::span(&s, 1));
    const auto layout = nn::Layout(arch);
    for (int k = 0; k < 50; ++k) {
      const auto& seg = layout[k % layout.size()];
      const std::size_t idx = seg.offset + UniformIndex(rng, seg.size);
      const double num = oracle::NumericParamGradient(q, s, idx, 1e-6);
      const double ana = lg.grad[static_cast<Eigen::Index>(idx)];
      const double scale = std::max(std::abs(num), std::abs(ana));
      if (scale < 1e-8) continue;
      worst = std::max(worst, std::abs(num - ana) / scale);
      ++checked;
    }
  }
  return {worst < 1e-4, Fmt("20 (net, input) pairs, %d parameters, max relative "
                            "error %.3g (limit 1e-4)",
                            checked, worst)};
}

Outcome MonteCarloLabels() {
  Rng rng(505);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> r(UniformInt(rng, 1, 14));
    for (double& x : r) {
      const int kind = UniformInt(rng, 0, 3);
      x = kind == 0 ? 0.0 : kind == 1 ? UniformInt(rng, 0, 3) / 3.0 : Uniform(rng, -1, 1);
    }
    const auto labels = learn::MonteCarloLabels(r);
    const auto ref = oracle::ReverseCumsum(r);
    if (labels != ref) ++bad;
    for (std::size_t t = 0; t < r.size(); ++t) {
      const double next = t + 1 < r.size() ? labels[t + 1] : 0.0;
      if (labels[t] != r[t] + next) {
        ++bad;
        break;
      }
    }
  }
  return {bad == 0, Fmt("10000 reward vectors, %d mismatches", bad)};
}

// Place rows: the bottle released with its base center at (x, y) and tilted
// by `tilt` about x, its lowest point `gap` above the coaster top.
struct BottleRow {
  const char* what;
  double tilt_deg;
  double gap;   // lowest point above the coaster top (negative: sunk in)
  double x;     // base center offset from the coaster axis
  int obstacle; // 0 none, 1 clears within 2 cm of lift, 2 does not
};

Outcome BottleRewardTable() {
  using world::SceneObject;
  const double r = 0.03, body_h = 0.14, neck_r = 0.012, neck_h = 0.05;
  const double coaster_r = 0.05, coaster_t = 0.005;
  const world::GripperGeometry g;
  const world::RewardConfig rc;
  const BottleRow rows[] = {
      {"upright, released 5 mm above (settles)", 0, 0.005, 0, 0},
      {"25 deg, base center 3 cm up", 25, -1, 0, 0},
      {"14.9 deg, 1.5 cm", 14.9, 0.015, 0, 0},
      {"15.1 deg, 1.5 cm", 15.1, 0.015, 0, 0},
      {"29.9 deg, 1.5 cm", 29.9, 0.015, 0, 0},
      {"30.1 deg, 1.5 cm", 30.1, 0.015, 0, 0},
      {"upright, 1.99 cm", 0, 0.0199, 0, 0},
      {"upright, 2.01 cm", 0, 0.0201, 0, 0},
      {"upright, 3.99 cm", 0, 0.0399, 0, 0},
      {"upright, 4.01 cm", 0, 0.0401, 0, 0},
      {"sunk 3 mm into the coaster (clear when lifted)", 0, -0.003, 0, 0},
      {"obstacle overlap clears within 2 cm", 0, 0.015, 0, 1},
      {"obstacle overlap persists after 2 cm", 0, 0.015, 0, 2},
      {"base center 4.9 cm off axis", 0, 0.015, 0.049, 0},
      {"base center 5.1 cm off axis", 0, 0.015, 0.051, 0},
      {"upside down", 180, 0.015, 0, 0},
  };
  const double top = coaster_t;
  std::string detail;
  int bad = 0;
  double worked = -1;
  for (const BottleRow& row : rows) {
    const double th = row.tilt_deg * M_PI / 180;
    // Lowest point of a cylinder tilted by th about x, relative to its base
    // center: -r sin(th) for th <= 90 deg; upside down the body's far end.
    double low_rel = row.tilt_deg <= 90 ? -r * std::sin(th) : -(body_h + neck_h);
    double base_z;
    if (row.gap == -1) base_z = top + 0.03;  // base center 3 cm above the coaster
    else base_z = top + row.gap - low_rel;
    const Pose obj_pose = Pose::Translation(row.x, 0, base_z) * Pose::RotX(th);
    const double gap = base_z + low_rel - top;

    std::vector<SceneObject> scene = {
        {0, world::Category::kCoaster, world::MakeCoaster(coaster_r, coaster_t),
         Pose::Identity()},
        {1, world::Category::kBottle, world::MakeBottle(r, body_h, neck_r, neck_h),
         Pose::Translation(0.15, 0.15, 0)},
    };
    // Obstacle boxes beside the bottle: a 1 cm deep bite of the lower body
    // (gone after 2 cm of lift) or a tall post through it.
    if (row.obstacle) {
      const double bite_top = base_z + 0.01;
      const double half_h = row.obstacle == 1 ? 0.5 * (bite_top - top) : 0.1;
      const double cz = row.obstacle == 1 ? top + half_h : top + half_h;
      scene.push_back({2, world::Category::kBlock,
                       geometry::Box{Vec3(0.01, 0.01, half_h)},
                       Pose::Translation(r + 0.005, 0, cz)});
    }
    // Held from above across the neck.
    const world::HeldObject held{1, Pose::Translation(0, 0, -(body_h + 0.02))};
    const Pose release = obj_pose * held.grasp.Inverse();
    const world::PlaceOutcome out =
        world::EvaluatePlace(world::Task::kBottles, scene, held, release, g, rc);

    // Hand evaluation of every predicate.
    const double settled_gap = (gap > 0 && gap <= rc.settle_snap && !row.obstacle) ? 0.0 : gap;
    const bool above = std::abs(row.x) <= coaster_r;
    const bool collides = row.obstacle != 0 || settled_gap < -world::kContactTolerance;
    const bool clear = row.obstacle != 2;
    const bool req = row.tilt_deg <= 30 && above && settled_gap <= 0.04 &&
                     (!collides || clear);
    const int partial = (row.tilt_deg <= 15) + (settled_gap <= 0.02) + !collides;
    const double expected = req ? partial / 3.0 : 0.0;
    const double got = out.spec.Value();
    if (std::abs(got - expected) > 1e-12) {
      ++bad;
      detail += Fmt("[%s: got %.4f want %.4f] ", row.what, got, expected);
    }
    if (row.gap == -1) worked = got;
  }
  const bool worked_ok = std::abs(worked - 2.0 / 3.0) < 1e-12;
  return {bad == 0 && worked_ok,
          Fmt("%zu rows, %d mismatches; 25 deg tilt with base 3 cm up scores %.6f (want 2/3) ",
              std::size(rows), bad, worked) + detail};
}

Outcome NTrialDominance() {
  world::WorldConfig w;
  w.scene.blocks_min = 2;
  w.scene.blocks_max = 4;
  const auto schedule = sampling::DefaultSchedule();
  sampling::OracleScorer oracle_scorer(0.02, 11);
  std::vector<sampling::Scorer*> scorers(schedule.size(), &oracle_scorer);
  int dominance_bad = 0, one = 0, ten = 0, b = 0, c = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t scene_seed = DeriveSeed(606, i);
    sampling::TrialOptions opt;
    opt.n_samples = 64;
    auto grasp = [&](int trials, std::uint64_t rseed, std::vector<double>* values) {
      world::EnvState env = world::SpawnScene(w, scene_seed);
      Rng rng(rseed);
      try {
        const auto t = sampling::NTrialSelect(env, w, schedule, scorers, trials, opt,
                                              rng, values);
        if (!t.completed) return std::pair{false, t.final_value};
        const auto eff = world::MoveEffect(env, w, world::EffectOp::kClose);
        return std::pair{eff.antipodal && eff.collision_free && eff.feasible,
                         t.final_value};
      } catch (const std::runtime_error&) {
        return std::pair{false, -HUGE_VAL};
      }
    };
    std::vector<double> values;
    const auto [s1, v1] = grasp(1, DeriveSeed(607, i), nullptr);
    const auto [s10, v10] = grasp(10, DeriveSeed(608, i), &values);
    for (double v : values) dominance_bad += v10 < v;
    one += s1;
    ten += s10;
    b += s10 && !s1;
    c += s1 && !s10;
  }
  const double p = learn::McNemarOneSided(b, c);
  return {dominance_bad == 0 && ten > one && p < 0.05,
          Fmt("%d paired episodes: 1-trial A^CF %.3f, 10-trial %.3f, discordant "
              "%d/%d, one-sided McNemar p=%.3g; %d dominance violations",
              n, double(one) / n, double(ten) / n, b, c, p, dominance_bad)};
}

// Both desk-scale criteria share the two training runs.
struct DeskRuns {
  bool ran = false;
  std::string csv_a, csv_b;
  fs::path dir_a;
  cli::RunConfig cfg;
  double minutes = 0;
};

DeskRuns& Desk() {
  static DeskRuns runs;
  if (runs.ran) return runs;
  const fs::path config = fs::path(HSE3S_SOURCE_DIR) / "configs" / "desk_blocks.ini";
  runs.cfg = cli::LoadConfig(config.string());
  const fs::path root = fs::temp_directory_path() / "hse3s_acceptance";
  fs::remove_all(root);
  const int hw = static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));
  const auto t0 = std::chrono::steady_clock::now();
  for (int run = 0; run < 2; ++run) {
    const fs::path out = root / (run == 0 ? "a" : "b");
    setenv("HSE3S_OUT", out.c_str(), 1);
    std::ostringstream log;
    cli::TrainArgs args{config.string(), run == 0 ? 1 : hw};
    std::cout << "  desk run " << (run ? "B" : "A") << " (" << args.workers
              << " workers)..." << std::endl;
    if (cli::CmdTrain(args, std::cout, std::cerr) != 0) {
      throw std::runtime_error("desk-scale training failed");
    }
    const fs::path dir = cli::ResolveOutput(runs.cfg.output);
    std::ifstream in(dir / "curve.csv", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    (run == 0 ? runs.csv_a : runs.csv_b) = ss.str();
    if (run == 0) runs.dir_a = dir;
  }
  unsetenv("HSE3S_OUT");
  runs.minutes = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 60;
  runs.ran = true;
  return runs;
}

Outcome DeskLearning() {
  DeskRuns& runs = Desk();
  // Mean grasp reward per round from the curve.
  std::vector<double> grasp;
  std::istringstream in(runs.csv_a);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("round", 0) == 0) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(ls, field, ',')) f.push_back(field);
    grasp.push_back(std::stod(f.at(2)));
  }
  bool increasing = grasp.size() >= 5;
  for (std::size_t i = 1; i < 5 && i < grasp.size(); ++i) {
    increasing = increasing && grasp[i] > grasp[i - 1];
  }

  const learn::TrainConfig& t = runs.cfg.train;
  const int rounds = t.rounds.rounds;
  const fs::path ckpt = runs.dir_a / ("round_" + std::to_string(rounds - 1));
  std::vector<nn::QFunction> nets;
  for (int d = 0; d < learn::kDecisions; ++d) {
    nets.push_back(nn::LoadWeights(cli::CheckpointFile(ckpt, d).string()));
  }
  std::vector<learn::QScorer> qs;
  for (const auto& q : nets) qs.emplace_back(&q);
  std::vector<sampling::Scorer*> ptr;
  for (auto& s : qs) ptr.push_back(&s);

  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  learn::EvalConfig ec;
  ec.episode = t.episode;
  ec.episodes = 500;
  ec.seed = 9001;
  ec.workers = hw;
  const auto greedy = learn::Evaluate(ec, std::span(ptr.data(), 6),
                                      std::span(ptr.data() + 6, 6));
  const int base_n = 1000;
  const auto base = learn::RandomBaseline(t.episode, base_n, 9002, hw);
  auto grasped = [](const learn::EvalReport& r) {
    int k = 0;
    for (const auto& o : r.outcomes) k += o.grasp_reward > 0;
    return k;
  };
  const double g_rate = double(grasped(greedy)) / greedy.episodes;
  const double b_rate = double(grasped(base)) / base.episodes;
  // A zero baseline would make the ratio test vacuous, so a positive greedy
  // rate is also required.
  const bool ratio_ok = g_rate > 0 && g_rate >= 3 * b_rate;
  std::string curve;
  for (double gr : grasp) curve += Fmt("%.4f ", gr);
  return {ratio_ok && increasing,
          Fmt("greedy grasp success %.4f over %d episodes vs random %.4f over %d "
              "(need >= 3x and > 0): %s; mean grasp reward by round [ %s] "
              "first 5 strictly increasing: %s; two runs took %.1f min",
              g_rate, greedy.episodes, b_rate, base_n, ratio_ok ? "yes" : "no",
              curve.c_str(), increasing ? "yes" : "no", runs.minutes)};
}

Outcome Determinism() {
  DeskRuns& runs = Desk();
  const bool same = !runs.csv_a.empty() && runs.csv_a == runs.csv_b;
  return {same, Fmt("learning-curve CSVs of two runs (1 worker vs %u) are %s "
                    "(%zu bytes)",
                    std::max(2u, std::thread::hardware_concurrency()),
                    same ? "byte-identical" : "different", runs.csv_a.size())};
}

struct Criterion {
  const char* name;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"sample_complexity", "Sample-complexity identities", SampleComplexity},
      {"height_map", "Height-map oracle equivalence", HeightMapOracle},
      {"grasp_oracles", "Antipodal/collision oracle equivalence", GraspOracles},
      {"gradient", "Gradient correctness", GradientCorrectness},
      {"mc_labels", "Monte Carlo labeling", MonteCarloLabels},
      {"bottle_reward", "Bottle reward spec", BottleRewardTable},
      {"n_trial", "n-trial dominance", NTrialDominance},
      {"desk_learning", "Desk-scale learning", DeskLearning},
      {"determinism", "Determinism", Determinism},
  };
  std::vector<std::string> only;
  bool strict = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only.push_back(argv[++i]);
    } else if (a == "--strict") {
      strict = true;
    } else if (a == "--list") {
      for (const auto& c : criteria) std::cout << c.name << "\n";
      return 0;
    } else {
      std::cerr << "usage: acceptance [--only NAME]... [--strict] [--list]\n";
      return 2;
    }
  }
  int passed = 0, total = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) {
      continue;
    }
    ++total;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      std::cout << "ERROR " << c.title << ": " << e.what() << std::endl;
      return 1;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    passed += o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.title << " [" << c.name
              << ", " << Fmt("%.1f s", secs) << "]: " << o.detail << std::endl;
  }
  std::cout << "acceptance: " << passed << "/" << total << " criteria passed"
            << std::endl;
  return strict && passed != total ? 1 : 0;
}
