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

#include "hse3s/cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "hse3s/learn/evaluator.hpp"
#include "hse3s/learn/qscorer.hpp"
#include "hse3s/nn/weights_io.hpp"
#include "hse3s/sampling/scripted.hpp"
#include "hse3s/version.hpp"
#include "hse3s/world/snapshot.hpp"

namespace hse3s::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

std::string CurveCsv(const std::string& hash,
                     const std::vector<learn::CurveRow>& rows) {
  std::string s = "# config_hash=" + hash + "\n" + learn::CurveCsvHeader();
  for (const auto& r : rows) s += learn::CurveCsvRow(r);
  return s;
}

std::string Manifest(const RunConfig& cfg, const std::string& hash) {
  const learn::TrainConfig& t = cfg.train;
  std::ostringstream o;
  o << "config_hash = " << hash << "\n"
    << "hse3s_version = " << kVersion << "\n"
    << "weights_format_version = " << nn::kWeightsVersion << "\n"
    << "compiler = " << __VERSION__ << "\n"
    << "seed = " << t.seed << "\n"
    << "arch_seed = " << t.arch_seed << "\n"
    << "arch = " << t.arch.Describe() << "\n"
    << "param_count = " << t.arch.ParamCount() << "\n"
    << "buffer_capacity = " << t.buffer_capacity << "\n"
    << "place_epsilon = max(" << t.exploration.floor
    << ", 1 - place_experiences / " << t.exploration.place_target << ")\n"
    << "grasp_epsilon = linear " << t.exploration.start << " -> "
    << t.exploration.floor << " at round " << t.exploration.floor_round
    << ", greedy tail " << t.exploration.greedy_tail << "\n";
  return o.str();
}

// Config stored next to a checkpoint, falling back to the run directory.
std::optional<RunConfig> CheckpointConfig(const fs::path& dir) {
  for (const fs::path& p : {dir / "config.ini", dir.parent_path() / "config.ini"}) {
    if (fs::exists(p)) return LoadConfig(p.string());
  }
  return std::nullopt;
}

std::vector<nn::QFunction> LoadCheckpoint(const fs::path& dir,
                                          const nn::Arch* expected) {
  if (!fs::is_directory(dir)) {
    throw std::runtime_error("checkpoint directory not found: " + dir.string());
  }
  std::vector<nn::QFunction> nets;
  for (int d = 0; d < learn::kDecisions; ++d) {
    const fs::path p = CheckpointFile(dir, d);
    try {
      nets.push_back(nn::LoadWeights(p.string()));
    } catch (const nn::WeightsError& e) {
      throw std::runtime_error(p.string() + ": " + e.what());
    }
    const nn::Arch& a = nets.back().arch;
    const nn::Arch& want = expected ? *expected : nets.front().arch;
    if (!(a == want)) {
      throw std::runtime_error(p.string() + ": architecture mismatch: file has " +
                               a.Describe() + ", expected " + want.Describe());
    }
  }
  return nets;
}

}  // namespace

fs::path OutputRoot() {
  const char* env = std::getenv("HSE3S_OUT");
  return env && *env ? fs::path(env) : fs::current_path();
}

fs::path ResolveOutput(const std::string& path) {
  return OutputRoot() / fs::path(path);
}

fs::path CheckpointFile(const fs::path& dir, int d) {
  return dir / ("step_" + std::to_string(d) + ".weights");
}

void WriteCheckpoint(const fs::path& dir, const std::vector<nn::QFunction>& nets,
                     const RunConfig& cfg) {
  fs::create_directories(dir);
  for (std::size_t d = 0; d < nets.size(); ++d) {
    nn::SaveWeights(nets[d], CheckpointFile(dir, static_cast<int>(d)).string());
  }
  WriteText(dir / "config.ini", CanonicalConfig(cfg));
}

void WritePgm(const fs::path& path, const geometry::HeightMapImage& image,
              int channel, const std::string& config_hash) {
  const int n = image.resolution();
  std::string bytes = "P5\n# config_hash=" + config_hash + "\n" +
                      std::to_string(n) + " " + std::to_string(n) + "\n65535\n";
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double v = std::clamp(image.at(channel, r, c), 0.0, 1.0);
      const auto q = static_cast<std::uint16_t>(std::lround(v * 65535.0));
      bytes += static_cast<char>(q >> 8);
      bytes += static_cast<char>(q & 0xff);
    }
  }
  WriteText(path, bytes);
}

std::vector<std::uint16_t> ReadPgm(const fs::path& path, int* width,
                                   int* height) {
  std::ifstream in(path, std::ios::binary);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw std::runtime_error(path.string() + ": not a P5 graymap");
  auto next_int = [&] {
    in >> std::ws;
    while (in.peek() == '#') {
      std::string line;
      std::getline(in, line);
      in >> std::ws;
    }
    int v = 0;
    in >> v;
    return v;
  };
  const int w = next_int(), h = next_int(), maxval = next_int();
  in.get();
  if (!in || w <= 0 || h <= 0 || maxval != 65535) {
    throw std::runtime_error(path.string() + ": bad graymap header");
  }
  std::vector<std::uint16_t> px(static_cast<std::size_t>(w) * h);
  for (auto& p : px) {
    const int hi = in.get(), lo = in.get();
    if (!in) throw std::runtime_error(path.string() + ": truncated graymap");
    p = static_cast<std::uint16_t>((hi << 8) | lo);
  }
  if (width) *width = w;
  if (height) *height = h;
  return px;
}

int CmdTrain(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = LoadConfig(args.config);
  } catch (const ConfigError& e) {
    err << args.config << ": " << e.what() << "\n";
    return kExitUsage;
  }
  if (args.workers < 1) {
    err << "--workers must be >= 1\n";
    return kExitUsage;
  }
  try {
    const std::string hash = ConfigHash(cfg);
    const fs::path dir = ResolveOutput(cfg.output);
    fs::create_directories(dir);
    WriteText(dir / "config.ini", CanonicalConfig(cfg));
    WriteText(dir / "manifest.txt", Manifest(cfg, hash));
    learn::TrainConfig t = cfg.train;
    t.workers = args.workers;
    std::vector<learn::CurveRow> rows;
    const fs::path csv = dir / "curve.csv";
    learn::Train(t, [&](const learn::CurveRow& row,
                        const std::vector<nn::QFunction>& nets) {
      rows.push_back(row);
      WriteCheckpoint(dir / ("round_" + std::to_string(row.round)), nets, cfg);
      WriteText(csv, CurveCsv(hash, rows));
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "round %d: grasp %.4f place %.4f eps %.3f/%.3f\n", row.round,
                    row.mean_grasp_reward, row.mean_place_reward,
                    row.epsilon_grasp, row.epsilon_place);
      out << buf << std::flush;
    });
    out << "wrote " << csv.string() << "\n";
  } catch (const std::exception& e) {
    err << "train failed: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int CmdEval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  learn::Conditions conditions;
  world::Task task;
  try {
    if (args.episodes < 1) throw UsageError("--episodes must be >= 1");
    if (args.trials < 1) throw UsageError("--trials must be >= 1");
    if (args.workers < 1) throw UsageError("--workers must be >= 1");
    if (args.samples && *args.samples < 1) throw UsageError("--samples must be >= 1");
    try {
      conditions = learn::ParseConditions(args.conditions);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--conditions: ") + e.what());
    }
    try {
      task = world::ParseTask(args.task);
    } catch (const std::exception&) {
      throw UsageError("--task: unknown task '" + args.task + "'");
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const fs::path dir(args.ckpt);
    std::optional<RunConfig> stored = CheckpointConfig(dir);
    RunConfig cfg = stored.value_or(RunConfig{});
    cfg.train.episode.world.task = task;
    const auto nets = LoadCheckpoint(dir, stored ? &cfg.train.arch : nullptr);
    cfg.train.arch = nets.front().arch;
    cfg.train.episode.world.resolution = nets.front().arch.resolution;

    std::vector<learn::QScorer> scorers;
    scorers.reserve(nets.size());
    for (const auto& q : nets) scorers.emplace_back(&q);
    std::vector<sampling::Scorer*> grasp, place;
    for (int d = 0; d < learn::kDecisions; ++d) {
      (d < learn::kDecisions / 2 ? grasp : place).push_back(&scorers[d]);
    }

    learn::EvalConfig ec;
    ec.episode = cfg.train.episode;
    ec.episode.n_trials = args.trials;
    ec.episode.n_samples = args.samples.value_or(cfg.eval_samples);
    ec.episodes = args.episodes;
    ec.seed = args.seed;
    ec.detection_threshold = cfg.detection_threshold;
    ec.workers = args.workers;
    const learn::EvalReport report = learn::Evaluate(ec, grasp, place);

    const std::string hash = ConfigHash(cfg);
    out << "task " << world::ToString(task) << ", " << args.episodes
        << " episodes, " << args.trials << " trial(s), conditions "
        << args.conditions << ", config " << hash << "\n"
        << learn::FormatReport(report, conditions, false);
    const fs::path csv =
        args.out.empty()
            ? ResolveOutput("eval_" + std::string(world::ToString(task)) + "_t" +
                            std::to_string(args.trials) + "_" + args.conditions +
                            ".csv")
            : ResolveOutput(args.out);
    if (csv.has_parent_path()) fs::create_directories(csv.parent_path());
    WriteText(csv, "# config_hash=" + hash + "\n" +
                       learn::FormatReport(report, conditions, true));
    out << "wrote " << csv.string() << "\n";
  } catch (const ConfigError& e) {
    err << "checkpoint config: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "eval failed: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int CmdInspect(const InspectArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    if (!args.config.empty()) cfg = LoadConfig(args.config);
    cfg.train.episode.world.task = world::ParseTask(args.task);
    if (args.level < 1 ||
        args.level > static_cast<int>(cfg.train.episode.schedule.size())) {
      throw UsageError("--level must be in 1.." +
                       std::to_string(cfg.train.episode.schedule.size()));
    }
  } catch (const ConfigError& e) {
    err << args.config << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const learn::EpisodeSetup& setup = cfg.train.episode;
    const std::string hash = ConfigHash(cfg);
    const fs::path dir =
        args.out.empty()
            ? ResolveOutput("inspect_" + args.task + "_" + std::to_string(args.seed))
            : ResolveOutput(args.out);
    fs::create_directories(dir);

    world::EnvState env = world::SpawnScene(setup.world, args.seed);
    WriteText(dir / "scene.txt", "# config_hash=" + hash + "\n" +
                                     world::SnapshotString(env.scene));
    // Gazes come from the scripted grasp oracle so the sequence zooms in on
    // a graspable object.
    const geometry::HeightMapImage initial = env.i1;
    sampling::OracleScorer oracle;
    std::vector<sampling::Scorer*> scorers(setup.schedule.size(), &oracle);
    sampling::TrialOptions opt;
    opt.n_samples = setup.n_samples;
    opt.record = true;
    Rng rng(DeriveSeed(args.seed, 0x1e5));
    const sampling::TrialResult trial = sampling::RunTrial(
        env, setup.world, setup.schedule, scorers, opt, rng);

    // Level 1 sees the automatic initial observation, so it exists even
    // when the trial cannot start.
    const int available =
        std::max(1, static_cast<int>(trial.records.size()));
    int written = 0;
    for (int k = 0; k < args.level && k < available; ++k) {
      const geometry::HeightMapImage& image =
          k == 0 ? initial : trial.records[k].i1;
      for (int c = 0; c < geometry::HeightMapImage::kChannels; ++c) {
        WritePgm(dir / ("level" + std::to_string(k + 1) + "_ch" +
                        std::to_string(c) + ".pgm"),
                 image, c, hash);
      }
      ++written;
    }
    if (written < args.level) {
      err << "warning: trial stopped after level " << written << " ("
          << world::ToString(trial.failure) << ")\n";
    }
    out << "wrote " << written << " level(s) to " << dir.string() << "\n";
  } catch (const std::exception& e) {
    err << "inspect failed: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace hse3s::cli
