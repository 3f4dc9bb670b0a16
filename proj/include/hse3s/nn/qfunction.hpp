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

#ifndef HSE3S_NN_QFUNCTION_HPP_
#define HSE3S_NN_QFUNCTION_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hse3s/rng.hpp"

namespace hse3s::nn {

using Vector = Eigen::VectorXd;
using Action = std::array<double, 6>;

struct ConvSpec {
  int filters = 8;
  int kernel = 5;
  int stride = 2;
  bool operator==(const ConvSpec&) const = default;
};

// Image stack -> valid convolutions -> flatten -> concat action -> dense
// layers -> scalar. `rectify` switches every hidden nonlinearity between
// ReLU and identity.
struct Arch {
  int resolution = 64;
  int in_channels = 6;
  int action_dim = 6;
  std::vector<ConvSpec> convs = {{8, 5, 2}, {16, 3, 2}};
  std::vector<int> hidden = {64};
  bool rectify = true;

  static Arch Default() { return Arch{}; }
  // Throws std::invalid_argument if a layer produces no output.
  void Validate() const;
  int ConvOutSize(int layer) const;  // spatial side after conv `layer`
  int FlatSize() const;
  std::size_t ParamCount() const;
  std::size_t ImageSize() const {
    return static_cast<std::size_t>(in_channels) * resolution * resolution;
  }
  std::string Describe() const;
  bool operator==(const Arch&) const = default;
};

// Location of one weight or bias tensor inside the flat parameter vector.
struct Segment {
  std::string name;
  std::size_t offset = 0;
  std::size_t size = 0;
  int fan_in = 0;
  bool is_bias = false;
};
// Declared order: for each conv then each dense layer, weights then biases.
// Conv weights are [filter][channel][ky][kx]; dense weights [out][in].
std::vector<Segment> Layout(const Arch& arch);

struct QFunction {
  Arch arch;
  Vector params;
  std::int64_t step_count = 0;
};

// Weights uniform in +-sqrt(6 / fan_in), biases zero.
QFunction Init(const Arch& arch, std::uint64_t seed);

// One input: `images` holds in_channels * resolution^2 values,
// channel-major; the action is already normalized.
struct Sample {
  std::span<const double> images;
  Action action{};
  double label = 0.0;
};

double Forward(const QFunction& q, std::span<const double> images,
               const Action& action);

// Convolutional part evaluated once for an image stack; Head() then scores
// any number of actions against it.
struct Trunk {
  Vector pre;  // first dense layer pre-activation without the action term
};
Trunk ComputeTrunk(const QFunction& q, std::span<const double> images);
double Head(const QFunction& q, const Trunk& trunk, const Action& action);

struct LossGrad {
  double loss = 0.0;  // mean squared error
  Vector grad;
};
LossGrad Gradient(const QFunction& q, std::span<const Sample> batch);

// One SGD step on the batch mean squared error. Returns the loss before the
// update. Throws std::runtime_error naming `batch_id` if the loss or the
// gradient is not finite (the net is left untouched).
double SgdStep(QFunction& q, std::span<const Sample> batch, double lr,
               std::int64_t batch_id = -1);

// Optional hook applied to the analytic gradient before comparison, used to
// check that the checker catches faults.
using GradTamper = std::function<void(const Arch&, Vector&)>;

// Max relative error between the analytic gradient and central differences
// over `n_params` parameters drawn round-robin from every tensor.
double GradCheck(const QFunction& q, const Sample& sample, double epsilon,
                 Rng& rng, int n_params = 50, const GradTamper& tamper = {});

}  // namespace hse3s::nn

#endif  // HSE3S_NN_QFUNCTION_HPP_
