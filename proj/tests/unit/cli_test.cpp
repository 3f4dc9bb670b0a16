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

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hse3s/cli/commands.hpp"
#include "hse3s/cli/config.hpp"

namespace hse3s::cli {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void Spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

// Each test gets a fresh directory used as HSE3S_OUT.
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::path(::testing::TempDir()) / ("hse3s_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the binary with HSE3S_OUT set; returns the exit code.
  int Run(const std::string& args, std::string* output = nullptr) {
    const fs::path log = dir_ / "log.txt";
    const std::string cmd = "HSE3S_OUT='" + dir_.string() + "' '" +
                            HSE3S_CLI_PATH + "' " + args + " > '" +
                            log.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    if (output) *output = Slurp(log);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path Config(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    Spit(p, text);
    return p;
  }

  fs::path dir_;
};

const char* kSmoke =
    "[run]\ntask = blocks\nseed = 7\noutput = runs/a\n"
    "[rounds]\nrounds = 1\nepisodes_per_round = 4\nsgd_iters_per_round = 3\n"
    "[exploration]\nfloor_round = 1\ngreedy_tail = 0\n"
    "[sampler]\nn_samples = 8\neval_samples = 8\n"
    "[approximator]\nresolution = 16\nconvs = 4x3x2\nhidden = 8\nbatch = 4\n"
    "[scene]\nblocks_min = 2\nblocks_max = 3\n";

TEST_F(CliTest, MissingTaskIsUsageError) {
  std::string text = kSmoke;
  text.erase(text.find("task = blocks\n"), 14);
  std::string log;
  EXPECT_EQ(Run("train --config '" + Config("c.ini", text).string() + "'", &log),
            kExitUsage);
  EXPECT_NE(log.find("run.task"), std::string::npos) << log;
}

TEST_F(CliTest, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(Run("fly"), kExitUsage);
  EXPECT_EQ(Run("--help"), kExitOk);
}

TEST_F(CliTest, SmokeTrainWritesOneRow) {
  ASSERT_EQ(Run("train --config '" + Config("c.ini", kSmoke).string() + "'"),
            kExitOk);
  const fs::path run = dir_ / "runs/a";
  const std::string csv = Slurp(run / "curve.csv");
  int data_rows = 0;
  std::istringstream lines(csv);
  std::string line;
  bool header = false;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    ++data_rows;
  }
  EXPECT_EQ(data_rows, 1) << csv;
  EXPECT_NE(csv.find(ConfigHash(LoadConfig((dir_ / "c.ini").string()))),
            std::string::npos);
  for (int d = 0; d < 12; ++d) {
    EXPECT_TRUE(fs::exists(CheckpointFile(run / "round_0", d))) << d;
  }
  EXPECT_TRUE(fs::exists(run / "config.ini"));
}

TEST_F(CliTest, IdenticalCurvesAcrossRunsAndWorkers) {
  const std::string cmd = "train --config '" + Config("c.ini", kSmoke).string() + "'";
  const fs::path run = dir_ / "runs/a";
  ASSERT_EQ(Run(cmd), kExitOk);
  const std::string curve = Slurp(run / "curve.csv");
  std::vector<std::string> weights;
  for (int d = 0; d < 12; ++d) {
    weights.push_back(Slurp(CheckpointFile(run / "round_0", d)));
  }
  ASSERT_EQ(Run(cmd + " --workers 2"), kExitOk);
  EXPECT_EQ(Slurp(run / "curve.csv"), curve);
  for (int d = 0; d < 12; ++d) {
    EXPECT_EQ(Slurp(CheckpointFile(run / "round_0", d)), weights[d]) << d;
  }
}

TEST_F(CliTest, EvalArgumentChecks) {
  EXPECT_EQ(Run("eval --ckpt x --task blocks --episodes 0"), kExitUsage);
  EXPECT_EQ(Run("eval --ckpt x --task plates"), kExitUsage);
  EXPECT_EQ(Run("eval --ckpt x --task blocks --conditions b"), kExitUsage);
  std::string log;
  EXPECT_EQ(Run("eval --ckpt '" + (dir_ / "nowhere").string() +
                    "' --task blocks --episodes 1",
                &log),
            kExitFailure);
  EXPECT_FALSE(log.empty());
}

TEST_F(CliTest, EvalOfFreshCheckpoint) {
  ASSERT_EQ(Run("train --config '" + Config("c.ini", kSmoke).string() + "'"),
            kExitOk);
  std::string log;
  ASSERT_EQ(Run("eval --ckpt '" + (dir_ / "runs/a/round_0").string() +
                    "' --task blocks --episodes 3 --out e.csv",
                &log),
            kExitOk)
      << log;
  const std::string csv = Slurp(dir_ / "e.csv");
  EXPECT_EQ(csv.rfind("# config_hash=", 0), 0u) << csv;
}

TEST_F(CliTest, InspectWritesPgms) {
  std::string log;
  ASSERT_EQ(Run("inspect --task blocks --seed 3 --out ins", &log), kExitOk) << log;
  const fs::path out = dir_ / "ins";
  EXPECT_TRUE(fs::exists(out / "scene.txt"));
  int w = 0, h = 0;
  const auto px = ReadPgm(out / "level1_ch0.pgm", &w, &h);
  EXPECT_EQ(w, 64);
  EXPECT_EQ(h, 64);
  EXPECT_EQ(px.size(), 64u * 64u);
  EXPECT_TRUE(std::any_of(px.begin(), px.end(), [](auto v) { return v > 0; }));
  for (int level = 1; level <= 6; ++level) {
    for (int c = 0; c < 3; ++c) {
      EXPECT_TRUE(fs::exists(out / ("level" + std::to_string(level) + "_ch" +
                                    std::to_string(c) + ".pgm")))
          << level << " " << c;
    }
  }
}

TEST_F(CliTest, InspectEmptySceneIsAllZero) {
  const fs::path cfg = Config(
      "empty.ini", "[run]\ntask = blocks\n[scene]\nblocks_min = 0\nblocks_max = 0\n");
  std::string log;
  ASSERT_EQ(Run("inspect --task blocks --seed 1 --level 1 --out e --config '" +
                    cfg.string() + "'",
                &log),
            kExitOk)
      << log;
  for (int c = 0; c < 3; ++c) {
    const auto px =
        ReadPgm(dir_ / "e" / ("level1_ch" + std::to_string(c) + ".pgm"));
    ASSERT_EQ(px.size(), 64u * 64u);
    EXPECT_TRUE(std::all_of(px.begin(), px.end(), [](auto v) { return v == 0; }))
        << c;
  }
}

TEST_F(CliTest, InspectRejectsBadLevel) {
  EXPECT_EQ(Run("inspect --task blocks --seed 1 --level 7"), kExitUsage);
  EXPECT_EQ(Run("inspect --task blocks --seed 1 --level 0"), kExitUsage);
}

// ---------------------------------------------------------------- in-process

TEST(ConfigTest, CanonicalRoundTrip) {
  const RunConfig a = ParseConfig(kSmoke);
  const std::string canon = CanonicalConfig(a);
  const RunConfig b = ParseConfig(canon);
  EXPECT_EQ(CanonicalConfig(b), canon);
  EXPECT_EQ(ConfigHash(a), ConfigHash(b));
  EXPECT_EQ(ConfigHash(a).size(), 16u);
  EXPECT_EQ(b.train.arch.resolution, 16);
  EXPECT_EQ(b.train.episode.world.resolution, 16);
}

TEST(ConfigTest, HashSeesChanges) {
  RunConfig a = ParseConfig(kSmoke);
  RunConfig b = a;
  b.train.seed += 1;
  EXPECT_NE(ConfigHash(a), ConfigHash(b));
}

TEST(ConfigTest, Fnv1aKnownValues) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(ConfigTest, ErrorsNameTheField) {
  try {
    ParseConfig("[run]\ntask = blocks\n[rounds]\nrounds = zero\nbogus = 1\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    ASSERT_GE(e.messages().size(), 2u);
    bool rounds = false, bogus = false;
    for (const std::string& m : e.messages()) {
      rounds |= m.rfind("rounds.rounds: ", 0) == 0;
      bogus |= m.rfind("rounds.bogus: ", 0) == 0;
    }
    EXPECT_TRUE(rounds);
    EXPECT_TRUE(bogus);
    EXPECT_FALSE(e.missing_field());
  }
  try {
    ParseConfig("[rounds]\nrounds = 2\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_TRUE(e.missing_field());
  }
}

TEST(PgmTest, RoundTrip) {
  geometry::HeightMapImage img(8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) img.at(1, y, x) = (y * 8 + x) / 63.0;
  }
  const fs::path p = fs::path(::testing::TempDir()) / "hse3s_pgm_test.pgm";
  WritePgm(p, img, 1, "0123456789abcdef");
  EXPECT_NE(Slurp(p).find("0123456789abcdef"), std::string::npos);
  int w = 0, h = 0;
  const auto px = ReadPgm(p, &w, &h);
  ASSERT_EQ(px.size(), 64u);
  EXPECT_EQ(px.front(), 0);
  EXPECT_EQ(px.back(), 65535);
  EXPECT_TRUE(std::is_sorted(px.begin(), px.end()));
  fs::remove(p);
}

TEST(OutputTest, RelativePathsUseEnvironment) {
  ::setenv("HSE3S_OUT", "/tmp/somewhere", 1);
  EXPECT_EQ(ResolveOutput("x/y.csv"), fs::path("/tmp/somewhere/x/y.csv"));
  EXPECT_EQ(ResolveOutput("/abs/z.csv"), fs::path("/abs/z.csv"));
  ::unsetenv("HSE3S_OUT");
  EXPECT_EQ(ResolveOutput("x"), fs::current_path() / "x");
}

}  // namespace
}  // namespace hse3s::cli
