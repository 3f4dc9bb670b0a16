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

#include "hse3s/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hse3s::cli {

namespace pt = boost::property_tree;

namespace {

std::string Trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Reads typed values out of one section, collecting errors instead of
// stopping at the first.
class Reader {
 public:
  Reader(const pt::ptree& root, std::vector<std::string>& errors)
      : root_(root), errors_(errors) {}

  void Section(const std::string& name, const std::set<std::string>& keys) {
    section_ = name;
    node_ = nullptr;
    if (auto it = root_.find(name); it != root_.not_found()) {
      node_ = &it->second;
      for (const auto& [key, _] : *node_) {
        if (!keys.count(key)) errors_.push_back(name + "." + key + ": unknown key");
      }
    }
  }

  bool Has(const std::string& key) const {
    return node_ && node_->find(key) != node_->not_found();
  }

  std::string Raw(const std::string& key) const {
    return Trim(node_->get<std::string>(key));
  }

  void Fail(const std::string& key, const std::string& msg) {
    errors_.push_back(section_ + "." + key + ": " + msg);
  }

  template <typename T>
  void Int(const std::string& key, T& out, long long lo, long long hi) {
    if (!Has(key)) return;
    const std::string s = Raw(key);
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      Fail(key, "expected an integer, got '" + s + "'");
    } else if (v < lo || v > hi) {
      Fail(key, "value " + s + " out of range [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
    } else {
      out = static_cast<T>(v);
    }
  }

  void Uint64(const std::string& key, std::uint64_t& out) {
    if (!Has(key)) return;
    const std::string s = Raw(key);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      Fail(key, "expected a non-negative integer, got '" + s + "'");
    } else {
      out = v;
    }
  }

  void Real(const std::string& key, double& out, double lo, double hi) {
    if (!Has(key)) return;
    const std::string s = Raw(key);
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      Fail(key, "expected a number, got '" + s + "'");
    } else if (!(v >= lo && v <= hi)) {
      Fail(key, "value " + s + " out of range [" + Num(lo) + ", " + Num(hi) + "]");
    } else {
      out = v;
    }
  }

  void Bool(const std::string& key, bool& out) {
    if (!Has(key)) return;
    const std::string s = Raw(key);
    if (s == "true" || s == "1") out = true;
    else if (s == "false" || s == "0") out = false;
    else Fail(key, "expected true or false, got '" + s + "'");
  }

 private:
  const pt::ptree& root_;
  std::vector<std::string>& errors_;
  std::string section_;
  const pt::ptree* node_ = nullptr;
};

std::string FormatConvs(const std::vector<nn::ConvSpec>& convs) {
  std::string out;
  for (const auto& c : convs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(c.filters) + "x" + std::to_string(c.kernel) + "x" +
           std::to_string(c.stride);
  }
  return out;
}

std::string FormatInts(const std::vector<int>& v) {
  std::string out;
  for (int x : v) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x);
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : std::runtime_error([&] {
        std::string s = "invalid config:";
        for (const auto& m : messages) s += "\n  " + m;
        return s;
      }()),
      messages_(std::move(messages)) {
  for (const auto& m : messages_) {
    if (m.find("missing required field") != std::string::npos) {
      missing_field_ = true;
    }
  }
}

RunConfig ParseConfig(const std::string& text) {
  pt::ptree root;
  try {
    std::istringstream in(text);
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({"syntax: line " + std::to_string(e.line()) + ": " +
                       e.message()});
  }
  std::vector<std::string> errors;
  const std::set<std::string> sections = {"run",     "rounds",       "exploration",
                                          "sampler", "approximator", "scene",
                                          "schedule"};
  for (const auto& [name, node] : root) {
    if (!sections.count(name)) {
      errors.push_back(name + (node.empty() ? ": key outside any section"
                                            : ": unknown section"));
    }
  }

  RunConfig cfg;
  learn::TrainConfig& t = cfg.train;
  world::WorldConfig& w = t.episode.world;
  Reader r(root, errors);

  r.Section("run", {"task", "seed", "output", "record_wall_time"});
  if (!r.Has("task")) {
    errors.push_back("run.task: missing required field (blocks, mugs or bottles)");
  } else {
    try {
      w.task = world::ParseTask(r.Raw("task"));
    } catch (const std::exception&) {
      r.Fail("task", "unknown task '" + r.Raw("task") +
                         "' (expected blocks, mugs or bottles)");
    }
  }
  r.Uint64("seed", t.seed);
  if (r.Has("output")) {
    cfg.output = r.Raw("output");
    if (cfg.output.empty()) r.Fail("output", "must not be empty");
  }
  r.Bool("record_wall_time", t.record_wall_time);

  r.Section("rounds", {"rounds", "episodes_per_round", "sgd_iters_per_round"});
  r.Int("rounds", t.rounds.rounds, 1, 1000000);
  r.Int("episodes_per_round", t.rounds.episodes_per_round, 1, 100000000);
  r.Int("sgd_iters_per_round", t.rounds.sgd_iters_per_round, 0, 100000000);
  // The exploration horizon follows the round count unless overridden.
  t.exploration.rounds = t.rounds.rounds;

  r.Section("exploration", {"start", "floor", "floor_round", "greedy_tail",
                            "place_target"});
  r.Real("start", t.exploration.start, 0.0, 1.0);
  r.Real("floor", t.exploration.floor, 0.0, 1.0);
  r.Int("floor_round", t.exploration.floor_round, 0, 1000000);
  r.Int("greedy_tail", t.exploration.greedy_tail, 0, 1000000);
  r.Real("place_target", t.exploration.place_target, 1e-9, 1e18);

  r.Section("sampler", {"n_samples", "n_trials", "eval_samples",
                        "detection_threshold"});
  r.Int("n_samples", t.episode.n_samples, 1, 1000000);
  r.Int("n_trials", t.episode.n_trials, 1, 1000000);
  r.Int("eval_samples", cfg.eval_samples, 1, 1000000);
  r.Real("detection_threshold", cfg.detection_threshold, -1e300, 1e300);

  r.Section("approximator", {"lr", "lr_decay", "batch", "arch_seed",
                             "buffer_capacity", "resolution", "convs",
                             "hidden", "rectify"});
  r.Real("lr", t.lr, 0.0, 1e6);
  r.Real("lr_decay", t.lr_decay, 0.0, 1e6);
  r.Int("batch", t.batch, 1, 1000000);
  r.Uint64("arch_seed", t.arch_seed);
  r.Int("buffer_capacity", t.buffer_capacity, 1, 1000000000);
  r.Int("resolution", t.arch.resolution, 4, 4096);
  w.resolution = t.arch.resolution;
  if (r.Has("convs")) {
    std::vector<nn::ConvSpec> convs;
    std::istringstream in(r.Raw("convs"));
    std::string tok;
    bool ok = true;
    while (in >> tok) {
      nn::ConvSpec c;
      char x1 = 0, x2 = 0, extra = 0;
      std::istringstream ts(tok);
      if (!(ts >> c.filters >> x1 >> c.kernel >> x2 >> c.stride) || x1 != 'x' ||
          x2 != 'x' || (ts >> extra) || c.filters < 1 || c.kernel < 1 ||
          c.stride < 1) {
        r.Fail("convs", "expected FILTERSxKERNELxSTRIDE, got '" + tok + "'");
        ok = false;
        break;
      }
      convs.push_back(c);
    }
    if (ok) t.arch.convs = convs;
  }
  if (r.Has("hidden")) {
    std::vector<int> hidden;
    std::istringstream in(r.Raw("hidden"));
    std::string tok;
    bool ok = true;
    while (in >> tok) {
      int v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size() || v < 1) {
        r.Fail("hidden", "expected positive layer widths, got '" + tok + "'");
        ok = false;
        break;
      }
      hidden.push_back(v);
    }
    if (ok) t.arch.hidden = hidden;
  }
  r.Bool("rectify", t.arch.rectify);

  r.Section("scene", {"blocks_min", "blocks_max", "mugs_min", "mugs_max",
                      "bottles_min", "bottles_max", "coasters",
                      "block_edge_min", "block_edge_max", "cluster_half"});
  world::SceneConfig& s = w.scene;
  r.Int("blocks_min", s.blocks_min, 0, 100);
  r.Int("blocks_max", s.blocks_max, 0, 100);
  r.Int("mugs_min", s.mugs_min, 0, 100);
  r.Int("mugs_max", s.mugs_max, 0, 100);
  r.Int("bottles_min", s.bottles_min, 0, 100);
  r.Int("bottles_max", s.bottles_max, 0, 100);
  r.Int("coasters", s.coasters, 0, 100);
  r.Real("block_edge_min", s.block_edge_min, 1e-4, 1.0);
  r.Real("block_edge_max", s.block_edge_max, 1e-4, 1.0);
  r.Real("cluster_half", s.cluster_half, 0.0, 1.0);
  if (s.blocks_min > s.blocks_max) errors.push_back("scene.blocks_min: exceeds blocks_max");
  if (s.mugs_min > s.mugs_max) errors.push_back("scene.mugs_min: exceeds mugs_max");
  if (s.bottles_min > s.bottles_max) errors.push_back("scene.bottles_min: exceeds bottles_max");
  if (s.block_edge_min > s.block_edge_max) {
    errors.push_back("scene.block_edge_min: exceeds block_edge_max");
  }

  if (auto it = root.find("schedule"); it != root.not_found()) {
    std::map<int, std::string> lines;
    for (const auto& [key, node] : it->second) {
      int n = 0;
      if (key.rfind("level", 0) != 0 ||
          std::from_chars(key.data() + 5, key.data() + key.size(), n).ptr !=
              key.data() + key.size() || n < 1) {
        errors.push_back("schedule." + key + ": unknown key (expected levelN)");
        continue;
      }
      lines[n] = Trim(node.data());
    }
    std::string text;
    int expect = 1;
    bool ok = !lines.empty();
    for (const auto& [n, line] : lines) {
      if (n != expect++) {
        errors.push_back("schedule.level" + std::to_string(expect - 1) +
                         ": missing (levels must be numbered 1..N)");
        ok = false;
        break;
      }
      try {
        sampling::ParseSchedule(line).Validate();
      } catch (const std::exception& e) {
        errors.push_back("schedule.level" + std::to_string(n) + ": " + e.what());
        ok = false;
      }
      text += line + "\n";
    }
    if (ok) t.episode.schedule = sampling::ParseSchedule(text);
  }

  if (errors.empty()) {
    auto check = [&](const char* field, auto&& fn) {
      try {
        fn();
      } catch (const std::exception& e) {
        errors.push_back(std::string(field) + ": " + e.what());
      }
    };
    check("rounds", [&] { t.rounds.Validate(); });
    check("exploration", [&] { t.exploration.Validate(); });
    check("approximator", [&] { t.arch.Validate(); });
    check("schedule", [&] {
      t.episode.schedule.Validate();
      if (t.episode.schedule.size() != learn::kDecisions / 2) {
        throw std::invalid_argument("training needs exactly " +
                                    std::to_string(learn::kDecisions / 2) +
                                    " levels");
      }
    });
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

RunConfig LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"config: cannot read '" + path + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

std::string CanonicalConfig(const RunConfig& cfg) {
  const learn::TrainConfig& t = cfg.train;
  const world::WorldConfig& w = t.episode.world;
  const world::SceneConfig& s = w.scene;
  std::ostringstream o;
  o << "[run]\n"
    << "task = " << world::ToString(w.task) << "\n"
    << "seed = " << t.seed << "\n"
    << "output = " << cfg.output << "\n"
    << "record_wall_time = " << (t.record_wall_time ? "true" : "false") << "\n"
    << "\n[rounds]\n"
    << "rounds = " << t.rounds.rounds << "\n"
    << "episodes_per_round = " << t.rounds.episodes_per_round << "\n"
    << "sgd_iters_per_round = " << t.rounds.sgd_iters_per_round << "\n"
    << "\n[exploration]\n"
    << "start = " << Num(t.exploration.start) << "\n"
    << "floor = " << Num(t.exploration.floor) << "\n"
    << "floor_round = " << t.exploration.floor_round << "\n"
    << "greedy_tail = " << t.exploration.greedy_tail << "\n"
    << "place_target = " << Num(t.exploration.place_target) << "\n"
    << "\n[sampler]\n"
    << "n_samples = " << t.episode.n_samples << "\n"
    << "n_trials = " << t.episode.n_trials << "\n"
    << "eval_samples = " << cfg.eval_samples << "\n"
    << "detection_threshold = " << Num(cfg.detection_threshold) << "\n"
    << "\n[approximator]\n"
    << "lr = " << Num(t.lr) << "\n"
    << "lr_decay = " << Num(t.lr_decay) << "\n"
    << "batch = " << t.batch << "\n"
    << "arch_seed = " << t.arch_seed << "\n"
    << "buffer_capacity = " << t.buffer_capacity << "\n"
    << "resolution = " << t.arch.resolution << "\n"
    << "convs = " << FormatConvs(t.arch.convs) << "\n"
    << "hidden = " << FormatInts(t.arch.hidden) << "\n"
    << "rectify = " << (t.arch.rectify ? "true" : "false") << "\n"
    << "\n[scene]\n"
    << "blocks_min = " << s.blocks_min << "\n"
    << "blocks_max = " << s.blocks_max << "\n"
    << "mugs_min = " << s.mugs_min << "\n"
    << "mugs_max = " << s.mugs_max << "\n"
    << "bottles_min = " << s.bottles_min << "\n"
    << "bottles_max = " << s.bottles_max << "\n"
    << "coasters = " << s.coasters << "\n"
    << "block_edge_min = " << Num(s.block_edge_min) << "\n"
    << "block_edge_max = " << Num(s.block_edge_max) << "\n"
    << "cluster_half = " << Num(s.cluster_half) << "\n"
    << "\n[schedule]\n";
  std::istringstream lines(sampling::FormatSchedule(t.episode.schedule));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    if (!line.empty()) o << "level" << ++n << " = " << line << "\n";
  }
  return o.str();
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ConfigHash(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(CanonicalConfig(cfg))));
  return buf;
}

}  // namespace hse3s::cli
