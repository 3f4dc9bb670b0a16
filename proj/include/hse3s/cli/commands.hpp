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

#ifndef HSE3S_CLI_COMMANDS_HPP_
#define HSE3S_CLI_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hse3s/cli/config.hpp"
#include "hse3s/geometry/sensing.hpp"

namespace hse3s::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime error
inline constexpr int kExitUsage = 2;    // bad flags or config

// Relative output paths resolve against $HSE3S_OUT, or the working
// directory when it is unset.
std::filesystem::path OutputRoot();
std::filesystem::path ResolveOutput(const std::string& path);

struct TrainArgs {
  std::string config;
  int workers = 1;
};

struct EvalArgs {
  std::string ckpt;
  std::string task;
  int episodes = 1000;
  int trials = 1;
  std::string conditions = "acf";
  std::optional<int> samples;  // config eval_samples when absent
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;  // CSV path; derived from the arguments when empty
};

struct InspectArgs {
  std::string task;
  std::uint64_t seed = 0;
  int level = 6;       // levels 1..level are written
  std::string config;  // optional; defaults otherwise
  std::string out;     // directory; derived from the arguments when empty
};

int CmdTrain(const TrainArgs& args, std::ostream& out, std::ostream& err);
int CmdEval(const EvalArgs& args, std::ostream& out, std::ostream& err);
int CmdInspect(const InspectArgs& args, std::ostream& out, std::ostream& err);

// Checkpoint directory layout: step_<d>.weights for d = 0..11 and the
// canonical config.ini of the run.
std::filesystem::path CheckpointFile(const std::filesystem::path& dir, int d);
void WriteCheckpoint(const std::filesystem::path& dir,
                     const std::vector<nn::QFunction>& nets,
                     const RunConfig& cfg);

// 16-bit binary graymap of one channel, heights scaled to 0..65535, with
// the config hash in a comment line.
void WritePgm(const std::filesystem::path& path,
              const geometry::HeightMapImage& image, int channel,
              const std::string& config_hash);
std::vector<std::uint16_t> ReadPgm(const std::filesystem::path& path,
                                   int* width = nullptr, int* height = nullptr);

}  // namespace hse3s::cli

#endif  // HSE3S_CLI_COMMANDS_HPP_
