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

#ifndef HSE3S_NN_WEIGHTS_IO_HPP_
#define HSE3S_NN_WEIGHTS_IO_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "hse3s/nn/qfunction.hpp"

namespace hse3s::nn {

inline constexpr char kWeightsMagic[8] = {'H', 'S', 'E', '3', 'S', 'Q', 'F', '\0'};
inline constexpr std::uint32_t kWeightsVersion = 1;

// Raised by LoadWeights; section() names the part of the file that failed
// ("open", "magic", "version", "arch", "step_count", "param_count",
// "parameters", "trailing").
class WeightsError : public std::runtime_error {
 public:
  WeightsError(std::string section, const std::string& what)
      : std::runtime_error(section + ": " + what), section_(std::move(section)) {}
  const std::string& section() const { return section_; }

 private:
  std::string section_;
};

void SaveWeights(const QFunction& q, const std::string& path);
QFunction LoadWeights(const std::string& path);

}  // namespace hse3s::nn

#endif  // HSE3S_NN_WEIGHTS_IO_HPP_
