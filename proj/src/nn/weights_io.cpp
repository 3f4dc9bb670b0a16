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

#include "hse3s/nn/weights_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace hse3s::nn {

namespace {

static_assert(std::endian::native == std::endian::little,
              "weight files are written in host order");

class Writer {
 public:
  template <typename T>
  void Put(T v) {
    const auto* p = reinterpret_cast<const char*>(&v);
    bytes.insert(bytes.end(), p, p + sizeof(T));
  }
  std::vector<char> bytes;
};

class Reader {
 public:
  explicit Reader(std::vector<char> bytes) : bytes_(std::move(bytes)) {}

  template <typename T>
  T Get(const char* section) {
    if (pos_ + sizeof(T) > bytes_.size()) {
      throw WeightsError(section, "file truncated");
    }
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::vector<char> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void SaveWeights(const QFunction& q, const std::string& path) {
  Writer w;
  for (char c : kWeightsMagic) w.Put(c);
  w.Put(kWeightsVersion);
  const Arch& a = q.arch;
  std::vector<std::int32_t> desc = {a.resolution, a.in_channels, a.action_dim,
                                    static_cast<std::int32_t>(a.convs.size())};
  for (const ConvSpec& c : a.convs) {
    desc.insert(desc.end(), {c.filters, c.kernel, c.stride});
  }
  desc.push_back(static_cast<std::int32_t>(a.hidden.size()));
  desc.insert(desc.end(), a.hidden.begin(), a.hidden.end());
  desc.push_back(a.rectify ? 1 : 0);
  w.Put(static_cast<std::uint32_t>(desc.size()));
  for (std::int32_t v : desc) w.Put(v);
  w.Put(static_cast<std::int64_t>(q.step_count));
  w.Put(static_cast<std::uint64_t>(q.params.size()));
  for (Eigen::Index i = 0; i < q.params.size(); ++i) w.Put(q.params[i]);

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.write(w.bytes.data(), static_cast<std::streamsize>(w.bytes.size()));
  if (!os) throw std::runtime_error("write failed for " + path);
}

QFunction LoadWeights(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw WeightsError("open", "cannot read " + path);
  Reader r(std::vector<char>(std::istreambuf_iterator<char>(is), {}));

  for (char c : kWeightsMagic) {
    if (r.Get<char>("magic") != c) throw WeightsError("magic", "not a weight file");
  }
  const auto version = r.Get<std::uint32_t>("version");
  if (version != kWeightsVersion) {
    throw WeightsError("version", "file version " + std::to_string(version) +
                                      " is incompatible with " +
                                      std::to_string(kWeightsVersion));
  }
  QFunction q;
  try {
    const auto n = r.Get<std::uint32_t>("arch");
    if (n > 64) throw WeightsError("arch", "descriptor too long");
    std::vector<std::int32_t> d(n);
    for (auto& v : d) v = r.Get<std::int32_t>("arch");
    std::size_t i = 0;
    auto next = [&]() {
      if (i >= d.size()) throw WeightsError("arch", "descriptor too short");
      return d[i++];
    };
    Arch& a = q.arch;
    a.resolution = next();
    a.in_channels = next();
    a.action_dim = next();
    a.convs.resize(next());
    for (ConvSpec& c : a.convs) {
      c.filters = next();
      c.kernel = next();
      c.stride = next();
    }
    a.hidden.resize(next());
    for (int& h : a.hidden) h = next();
    a.rectify = next() != 0;
    if (i != d.size()) throw WeightsError("arch", "descriptor has extra fields");
    a.Validate();
  } catch (const std::invalid_argument& e) {
    throw WeightsError("arch", e.what());
  } catch (const std::length_error& e) {
    throw WeightsError("arch", e.what());
  }
  q.step_count = r.Get<std::int64_t>("step_count");
  const auto count = r.Get<std::uint64_t>("param_count");
  if (count != q.arch.ParamCount()) {
    throw WeightsError("param_count", "expected " +
                                          std::to_string(q.arch.ParamCount()) +
                                          ", file has " + std::to_string(count));
  }
  if (r.remaining() < count * sizeof(double)) {
    throw WeightsError("parameters", "file truncated");
  }
  q.params.resize(static_cast<Eigen::Index>(count));
  for (Eigen::Index k = 0; k < q.params.size(); ++k) {
    q.params[k] = r.Get<double>("parameters");
  }
  if (r.remaining() != 0) throw WeightsError("trailing", "unexpected bytes");
  return q;
}

}  // namespace hse3s::nn
