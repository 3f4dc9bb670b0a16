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

// Command-line entry point: train, eval and inspect subcommands.
#include <iostream>

#include "CLI11.hpp"
#include "hse3s/cli/commands.hpp"
#include "hse3s/version.hpp"

int main(int argc, char** argv) {
  using namespace hse3s::cli;
  CLI::App app{"Hierarchical SE(3) sampling for pick-and-place"};
  app.set_version_flag("--version", hse3s::kVersion);
  app.require_subcommand(1);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "run rounds of collection and SGD");
  t->add_option("--config", train.config, "INI run config")->required();
  t->add_option("--workers", train.workers, "episode worker threads")
      ->check(CLI::PositiveNumber);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "greedy success rates of a checkpoint");
  e->add_option("--ckpt", eval.ckpt, "checkpoint directory")->required();
  e->add_option("--task", eval.task, "blocks, mugs or bottles")->required();
  e->add_option("--episodes", eval.episodes, "independent episodes");
  e->add_option("--trials", eval.trials, "trials per choice (n-trial selection)");
  e->add_option("--conditions", eval.conditions, "grasp success: a or acf");
  e->add_option("--samples", eval.samples, "candidates per level");
  e->add_option("--seed", eval.seed, "evaluation scene seed");
  e->add_option("--workers", eval.workers, "episode worker threads");
  e->add_option("--out", eval.out, "CSV path");

  InspectArgs inspect;
  auto* i = app.add_subcommand("inspect", "write height maps of a sense sequence");
  i->add_option("--task", inspect.task, "blocks, mugs or bottles")->required();
  i->add_option("--seed", inspect.seed, "scene seed")->required();
  i->add_option("--level", inspect.level, "deepest level written (1-6)");
  i->add_option("--config", inspect.config, "optional INI run config");
  i->add_option("--out", inspect.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }
  if (*t) return CmdTrain(train, std::cout, std::cerr);
  if (*e) return CmdEval(eval, std::cout, std::cerr);
  return CmdInspect(inspect, std::cout, std::cerr);
}
