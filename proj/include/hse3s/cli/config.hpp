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

#ifndef HSE3S_CLI_CONFIG_HPP_
#define HSE3S_CLI_CONFIG_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hse3s/learn/trainer.hpp"

namespace hse3s::cli {

// Everything a run depends on. Parsed from an INI file with sections
// [run], [rounds], [exploration], [sampler], [approximator], [scene] and
// an optional [schedule] (keys level1..levelN, one level line each).
struct RunConfig {
  learn::TrainConfig train;
  int eval_samples = 100;
  double detection_threshold = 0.5;
  std::string output = "runs/default";
};

// One message per offending field, each prefixed "section.key: ".
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const { return messages_; }
  // True if some required field was absent.
  bool missing_field() const { return missing_field_; }

 private:
  std::vector<std::string> messages_;
  bool missing_field_ = false;
};

RunConfig ParseConfig(const std::string& text);
RunConfig LoadConfig(const std::string& path);

// Fully resolved config in a fixed key order; parses back to the same config.
std::string CanonicalConfig(const RunConfig& cfg);

// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::uint64_t Fnv1a64(std::string_view bytes);
std::string ConfigHash(const RunConfig& cfg);

}  // namespace hse3s::cli

#endif  // HSE3S_CLI_CONFIG_HPP_
