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

#include "hse3s/learn/evaluator.hpp"

#include <cstdio>
#include <stdexcept>

#include "hse3s/learn/parallel.hpp"
#include "hse3s/learn/stats.hpp"
#include "hse3s/sampling/scripted.hpp"

namespace hse3s::learn {

Conditions ParseConditions(const std::string& s) {
  if (s == "a") return Conditions::kAntipodal;
  if (s == "acf") return Conditions::kAntipodalCollisionFree;
  throw std::invalid_argument("conditions must be 'a' or 'acf', got '" + s + "'");
}

const char* ToString(FailureKind k) {
  switch (k) {
    case FailureKind::kNone:
      return "none";
    case FailureKind::kDF:
      return "DF";
    case FailureKind::kGF:
      return "GF";
    case FailureKind::kFOS:
      return "FOS";
    case FailureKind::kPUD:
      return "PUD";
    case FailureKind::kPIS:
      return "PIS";
    case FailureKind::kOther:
      return "other";
  }
  return "?";
}

FailureKind Classify(const EpisodeResult& e, double threshold) {
  if (e.grasped && e.place_reward > 0) return FailureKind::kNone;
  if (!e.grasped) {
    return e.grasp_best < threshold ? FailureKind::kDF : FailureKind::kGF;
  }
  if (e.place_best < threshold) return FailureKind::kDF;
  if (!e.place) return FailureKind::kOther;
  if (!e.place->over_support) return FailureKind::kFOS;
  if (e.place->upside_down) return FailureKind::kPUD;
  if (e.place->into_support) return FailureKind::kPIS;
  return FailureKind::kOther;
}

std::uint64_t EvalEpisodeSeed(std::uint64_t seed, int index) {
  return DeriveSeed(seed, 0xe7a1, static_cast<std::uint64_t>(index));
}

namespace {

EvalReport Run(const EpisodeSetup& setup, int episodes, std::uint64_t seed,
               int workers, double threshold, double epsilon,
               std::span<sampling::Scorer* const> grasp,
               std::span<sampling::Scorer* const> place) {
  if (episodes < 1) throw std::invalid_argument("need at least one episode");
  EpisodeSetup s = setup;
  s.record = false;
  std::vector<EpisodeResult> results(episodes);
  ParallelFor(episodes, workers, [&](int i) {
    Rng rng(DeriveSeed(seed, 0x7a1, static_cast<std::uint64_t>(i)));
    results[i] = RunEpisode(s, EvalEpisodeSeed(seed, i), grasp, place,
                            epsilon, epsilon, rng, i);
  });
  EvalReport r;
  r.episodes = episodes;
  for (const EpisodeResult& e : results) {
    EpisodeOutcome o;
    o.grasp_a = e.antipodal;
    o.grasp_acf = e.antipodal && e.collision_free;
    o.place = e.place_reward > 0;
    o.task = e.grasped && o.place;
    o.grasp_reward = e.grasp_reward;
    o.place_reward = e.place_reward;
    o.failure = Classify(e, threshold);
    r.grasp_a += o.grasp_a;
    r.grasp_acf += o.grasp_acf;
    r.place += o.place;
    r.task += o.task;
    ++r.failures[static_cast<int>(o.failure)];
    r.mean_grasp_reward += e.grasp_reward / episodes;
    r.mean_place_reward += e.place_reward / episodes;
    r.outcomes.push_back(o);
  }
  return r;
}

}  // namespace

EvalReport Evaluate(const EvalConfig& cfg,
                    std::span<sampling::Scorer* const> grasp,
                    std::span<sampling::Scorer* const> place) {
  if (cfg.episode.n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  return Run(cfg.episode, cfg.episodes, cfg.seed, cfg.workers,
             cfg.detection_threshold, 0.0, grasp, place);
}

EvalReport RandomBaseline(const EpisodeSetup& setup, int episodes,
                          std::uint64_t seed, int workers) {
  EpisodeSetup s = setup;
  s.n_trials = 1;
  sampling::ConstantScorer zero;
  std::vector<sampling::Scorer*> ptrs(setup.schedule.size(), &zero);
  return Run(s, episodes, seed, workers, 0.5, 1.0, ptrs, ptrs);
}

std::string FormatReport(const EvalReport& r, Conditions c, bool csv) {
  struct Line {
    const char* name;
    int k;
  };
  const Line lines[] = {
      {c == Conditions::kAntipodal ? "grasp_a" : "grasp_acf", r.GraspSuccesses(c)},
      {"grasp_a", r.grasp_a},
      {"grasp_acf", r.grasp_acf},
      {"place", r.place},
      {"task", r.task},
  };
  std::string out;
  char buf[256];
  if (csv) out += "metric,count,episodes,rate,ci_low,ci_high\n";
  else out += "metric        count  episodes    rate  95% CI\n";
  for (std::size_t i = 1; i < std::size(lines); ++i) {
    const Line& l = lines[i];
    const auto [lo, hi] = WilsonInterval(l.k, r.episodes);
    const double rate = static_cast<double>(l.k) / r.episodes;
    if (csv) {
      std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.17g,%.17g,%.17g\n", l.name,
                    l.k, r.episodes, rate, lo, hi);
    } else {
      std::snprintf(buf, sizeof(buf), "%-12s %6d %9d  %6.4f  [%.4f, %.4f]%s\n",
                    l.name, l.k, r.episodes, rate, lo, hi,
                    std::string(l.name) == lines[0].name ? "  *" : "");
    }
    out += buf;
  }
  for (int k = 1; k < 7; ++k) {
    const auto kind = static_cast<FailureKind>(k);
    if (csv) {
      std::snprintf(buf, sizeof(buf), "failure_%s,%d,%d,%.17g,,\n",
                    ToString(kind), r.failures[k], r.episodes,
                    static_cast<double>(r.failures[k]) / r.episodes);
    } else {
      std::snprintf(buf, sizeof(buf), "failure %-5s %5d %9d  %6.4f\n",
                    ToString(kind), r.failures[k], r.episodes,
                    static_cast<double>(r.failures[k]) / r.episodes);
    }
    out += buf;
  }
  return out;
}

}  // namespace hse3s::learn
