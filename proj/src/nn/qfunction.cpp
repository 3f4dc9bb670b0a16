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

#include "hse3s/nn/qfunction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hse3s::nn {

namespace {

using Mat = Eigen::MatrixXd;
using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>;
using ConstRowMap = Eigen::Map<const RowMat>;
using RowMap = Eigen::Map<RowMat>;

int OutSide(int in, int kernel, int stride) {
  return in < kernel ? 0 : (in - kernel) / stride + 1;
}

// Patches of a (channels, batch * side^2) activation laid out as columns of
// a (channels * k * k, batch * out^2) matrix.
Mat Im2Col(const RowMat& in, int channels, int side, int batch, int k,
           int stride, int out) {
  const int area_in = side * side;
  const int area_out = out * out;
  Mat cols(channels * k * k, static_cast<Eigen::Index>(batch) * area_out);
  for (int b = 0; b < batch; ++b) {
    for (int oy = 0; oy < out; ++oy) {
      for (int ox = 0; ox < out; ++ox) {
        double* dst = cols.col(b * area_out + oy * out + ox).data();
        for (int c = 0; c < channels; ++c) {
          for (int ky = 0; ky < k; ++ky) {
            const double* src = in.data() + c * in.cols() + b * area_in +
                                (oy * stride + ky) * side + ox * stride;
            for (int kx = 0; kx < k; ++kx) *dst++ = src[kx];
          }
        }
      }
    }
  }
  return cols;
}

RowMat Col2Im(const Mat& cols, int channels, int side, int batch, int k,
              int stride, int out) {
  const int area_in = side * side;
  const int area_out = out * out;
  RowMat in = RowMat::Zero(channels, static_cast<Eigen::Index>(batch) * area_in);
  for (int b = 0; b < batch; ++b) {
    for (int oy = 0; oy < out; ++oy) {
      for (int ox = 0; ox < out; ++ox) {
        const double* src = cols.col(b * area_out + oy * out + ox).data();
        for (int c = 0; c < channels; ++c) {
          for (int ky = 0; ky < k; ++ky) {
            double* dst = in.data() + c * in.cols() + b * area_in +
                          (oy * stride + ky) * side + ox * stride;
            for (int kx = 0; kx < k; ++kx) dst[kx] += *src++;
          }
        }
      }
    }
  }
  return in;
}

template <typename M>
void Activate(const M& z, M& a, bool rectify) {
  if (rectify) {
    a = z.cwiseMax(0.0);
  } else {
    a = z;
  }
}

template <typename M>
void ActivationGrad(const M& z, M& d, bool rectify) {
  if (!rectify) return;
  const double* zp = z.data();
  double* dp = d.data();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(zp[i] > 0.0)) dp[i] = 0.0;
  }
}

struct ConvCache {
  Mat cols;
  RowMat z;
  RowMat a;
};

struct Pass {
  std::vector<int> active;  // input channels with any nonzero value
  std::vector<ConvCache> conv;
  std::vector<Mat> dense_in;  // input to each dense layer
  std::vector<Mat> dense_z;
  Mat out;  // (1, batch)
};

// Layer 0 weights restricted to the active input channels.
RowMat ActiveWeights(const RowMat& w, const std::vector<int>& active,
                     int channels, int kk) {
  if (static_cast<int>(active.size()) == channels) return w;
  RowMat out(w.rows(), static_cast<Eigen::Index>(active.size()) * kk);
  for (std::size_t i = 0; i < active.size(); ++i) {
    out.middleCols(i * kk, kk) = w.middleCols(active[i] * kk, kk);
  }
  return out;
}

class Net {
 public:
  explicit Net(const QFunction& q) : q_(q), layout_(Layout(q.arch)) {}

  ConstRowMap Weights(std::size_t seg, Eigen::Index rows) const {
    const Segment& s = layout_[seg];
    return ConstRowMap(q_.params.data() + s.offset, rows,
                       static_cast<Eigen::Index>(s.size) / rows);
  }
  Eigen::Map<const Eigen::VectorXd> Bias(std::size_t seg) const {
    const Segment& s = layout_[seg];
    return {q_.params.data() + s.offset, static_cast<Eigen::Index>(s.size)};
  }

  // Convolutional stack and flatten; returns (flat_size, batch).
  Mat ConvForward(std::span<const std::span<const double>> images,
                  Pass& pass) const {
    const Arch& arch = q_.arch;
    const int batch = static_cast<int>(images.size());
    const int area = arch.resolution * arch.resolution;
    for (const auto& img : images) {
      if (img.size() != arch.ImageSize()) {
        throw std::invalid_argument("image stack size does not match arch");
      }
    }
    pass.active.clear();
    for (int c = 0; c < arch.in_channels; ++c) {
      bool any = false;
      for (const auto& img : images) {
        const double* p = img.data() + static_cast<std::size_t>(c) * area;
        for (int i = 0; i < area && !any; ++i) any = p[i] != 0.0;
        if (any) break;
      }
      if (any) pass.active.push_back(c);
    }
    if (pass.active.empty()) pass.active.push_back(0);
    const int n_active = static_cast<int>(pass.active.size());
    RowMat x(n_active, static_cast<Eigen::Index>(batch) * area);
    for (int b = 0; b < batch; ++b) {
      for (int i = 0; i < n_active; ++i) {
        const double* p =
            images[b].data() + static_cast<std::size_t>(pass.active[i]) * area;
        std::copy(p, p + area, x.data() + i * x.cols() + b * area);
      }
    }

    pass.conv.resize(arch.convs.size());
    int side = arch.resolution;
    int channels = n_active;
    const RowMat* in = &x;
    for (std::size_t l = 0; l < arch.convs.size(); ++l) {
      const ConvSpec& spec = arch.convs[l];
      const int out = OutSide(side, spec.kernel, spec.stride);
      ConvCache& cache = pass.conv[l];
      cache.cols = Im2Col(*in, channels, side, batch, spec.kernel, spec.stride, out);
      const int full_channels = l == 0 ? arch.in_channels : arch.convs[l - 1].filters;
      ConstRowMap w = Weights(2 * l, spec.filters);
      if (l == 0) {
        const RowMat wa = ActiveWeights(w, pass.active, full_channels,
                                        spec.kernel * spec.kernel);
        cache.z.noalias() = wa * cache.cols;
      } else {
        cache.z.noalias() = w * cache.cols;
      }
      cache.z.colwise() += Bias(2 * l + 1);
      Activate(cache.z, cache.a, arch.rectify);
      in = &cache.a;
      side = out;
      channels = spec.filters;
    }
    const int p = side * side;
    Mat flat(channels * p, batch);
    for (int b = 0; b < batch; ++b) {
      for (int f = 0; f < channels; ++f) {
        flat.block(static_cast<Eigen::Index>(f) * p, b, p, 1) =
            in->block(f, static_cast<Eigen::Index>(b) * p, 1, p).transpose();
      }
    }
    return flat;
  }

  std::size_t DenseSeg(std::size_t j) const {
    return 2 * q_.arch.convs.size() + 2 * j;
  }
  int DenseOut(std::size_t j) const {
    return j < q_.arch.hidden.size() ? q_.arch.hidden[j] : 1;
  }

  Mat DenseForward(Mat x, Pass& pass) const {
    const std::size_t n = q_.arch.hidden.size() + 1;
    pass.dense_in.resize(n);
    pass.dense_z.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      ConstRowMap w = Weights(DenseSeg(j), DenseOut(j));
      pass.dense_in[j] = std::move(x);
      Mat z = w * pass.dense_in[j];
      z.colwise() += Bias(DenseSeg(j) + 1);
      if (j + 1 < n) {
        Activate(z, x, q_.arch.rectify);
      } else {
        x = z;
      }
      pass.dense_z[j] = std::move(z);
    }
    return x;
  }

  Mat Run(std::span<const Sample> batch, Pass& pass) const {
    std::vector<std::span<const double>> images;
    images.reserve(batch.size());
    for (const Sample& s : batch) images.push_back(s.images);
    Mat flat = ConvForward(images, pass);
    const int fs = static_cast<int>(flat.rows());
    const int ad = q_.arch.action_dim;
    Mat x(fs + ad, static_cast<Eigen::Index>(batch.size()));
    x.topRows(fs) = flat;
    for (std::size_t b = 0; b < batch.size(); ++b) {
      for (int i = 0; i < ad; ++i) x(fs + i, b) = batch[b].action[i];
    }
    pass.out = DenseForward(std::move(x), pass);
    return pass.out;
  }

  Vector Backward(const Pass& pass, const Mat& d_out) const {
    const Arch& arch = q_.arch;
    Vector grad = Vector::Zero(q_.params.size());
    auto grad_w = [&](std::size_t seg, Eigen::Index rows) {
      const Segment& s = layout_[seg];
      return RowMap(grad.data() + s.offset, rows,
                    static_cast<Eigen::Index>(s.size) / rows);
    };
    auto grad_b = [&](std::size_t seg) {
      const Segment& s = layout_[seg];
      return Eigen::Map<Eigen::VectorXd>(grad.data() + s.offset,
                                         static_cast<Eigen::Index>(s.size));
    };

    const std::size_t n = arch.hidden.size() + 1;
    Mat dz = d_out;
    Mat dx;
    for (std::size_t j = n; j-- > 0;) {
      grad_w(DenseSeg(j), DenseOut(j)).noalias() =
          dz * pass.dense_in[j].transpose();
      grad_b(DenseSeg(j) + 1) = dz.rowwise().sum();
      ConstRowMap w = Weights(DenseSeg(j), DenseOut(j));
      dx.noalias() = w.transpose() * dz;
      if (j > 0) {
        ActivationGrad(pass.dense_z[j - 1], dx, arch.rectify);
        dz = std::move(dx);
      }
    }
    // dx now holds the gradient of the first dense input.
    const int batch = static_cast<int>(d_out.cols());
    const std::size_t last = arch.convs.size() - 1;
    const int filters = arch.convs[last].filters;
    const int side = arch.ConvOutSize(static_cast<int>(last));
    const int p = side * side;
    RowMat da(filters, static_cast<Eigen::Index>(batch) * p);
    for (int b = 0; b < batch; ++b) {
      for (int f = 0; f < filters; ++f) {
        da.block(f, static_cast<Eigen::Index>(b) * p, 1, p) =
            dx.block(static_cast<Eigen::Index>(f) * p, b, p, 1).transpose();
      }
    }
    for (std::size_t l = arch.convs.size(); l-- > 0;) {
      const ConvSpec& spec = arch.convs[l];
      const ConvCache& cache = pass.conv[l];
      ActivationGrad(cache.z, da, arch.rectify);
      const RowMat& dzc = da;
      const int kk = spec.kernel * spec.kernel;
      // (cols * dz^T)^T is much faster than dz * cols^T for these shapes.
      const Mat dwt = cache.cols * dzc.transpose();
      if (l == 0) {
        const auto dw = dwt.transpose();
        RowMap gw = grad_w(0, spec.filters);
        for (std::size_t i = 0; i < pass.active.size(); ++i) {
          gw.middleCols(pass.active[i] * kk, kk) = dw.middleCols(i * kk, kk);
        }
      } else {
        grad_w(2 * l, spec.filters) = dwt.transpose();
      }
      grad_b(2 * l + 1) = dzc.rowwise().sum();
      if (l > 0) {
        ConstRowMap w = Weights(2 * l, spec.filters);
        const Mat dcols = w.transpose() * dzc;
        const int in_side = arch.ConvOutSize(static_cast<int>(l) - 1);
        da = Col2Im(dcols, arch.convs[l - 1].filters, in_side, batch,
                    spec.kernel, spec.stride, arch.ConvOutSize(static_cast<int>(l)));
      }
    }
    return grad;
  }

 private:
  const QFunction& q_;
  std::vector<Segment> layout_;
};

}  // namespace

void Arch::Validate() const {
  if (resolution < 1 || in_channels < 1 || action_dim < 0 || action_dim > 6) {
    throw std::invalid_argument("bad arch input sizes");
  }
  if (convs.empty()) throw std::invalid_argument("arch needs a conv layer");
  for (std::size_t l = 0; l < convs.size(); ++l) {
    if (convs[l].filters < 1 || convs[l].kernel < 1 || convs[l].stride < 1 ||
        ConvOutSize(static_cast<int>(l)) < 1) {
      throw std::invalid_argument("conv layer " + std::to_string(l) +
                                  " produces no output");
    }
  }
  for (int h : hidden) {
    if (h < 1) throw std::invalid_argument("dense layer width must be >= 1");
  }
}

int Arch::ConvOutSize(int layer) const {
  int side = resolution;
  for (int l = 0; l <= layer; ++l) {
    side = OutSide(side, convs[l].kernel, convs[l].stride);
  }
  return side;
}

int Arch::FlatSize() const {
  const int side = ConvOutSize(static_cast<int>(convs.size()) - 1);
  return convs.back().filters * side * side;
}

std::size_t Arch::ParamCount() const {
  const auto layout = Layout(*this);
  return layout.back().offset + layout.back().size;
}

std::string Arch::Describe() const {
  std::ostringstream os;
  os << "in " << resolution << "x" << resolution << "x" << in_channels
     << " + action " << action_dim;
  for (const ConvSpec& c : convs) {
    os << " | conv " << c.filters << " " << c.kernel << "x" << c.kernel
       << " s" << c.stride;
  }
  for (int h : hidden) os << " | dense " << h;
  os << " | dense 1" << (rectify ? " (relu)" : " (linear)");
  return os.str();
}

std::vector<Segment> Layout(const Arch& arch) {
  std::vector<Segment> out;
  std::size_t offset = 0;
  auto add = [&](std::string name, std::size_t size, int fan_in, bool bias) {
    out.push_back({std::move(name), offset, size, fan_in, bias});
    offset += size;
  };
  int channels = arch.in_channels;
  for (std::size_t l = 0; l < arch.convs.size(); ++l) {
    const ConvSpec& c = arch.convs[l];
    const int fan_in = channels * c.kernel * c.kernel;
    add("conv" + std::to_string(l) + ".weight",
        static_cast<std::size_t>(c.filters) * fan_in, fan_in, false);
    add("conv" + std::to_string(l) + ".bias", c.filters, fan_in, true);
    channels = c.filters;
  }
  int in = arch.FlatSize() + arch.action_dim;
  for (std::size_t j = 0; j <= arch.hidden.size(); ++j) {
    const int width = j < arch.hidden.size() ? arch.hidden[j] : 1;
    add("dense" + std::to_string(j) + ".weight",
        static_cast<std::size_t>(width) * in, in, false);
    add("dense" + std::to_string(j) + ".bias", width, in, true);
    in = width;
  }
  return out;
}

QFunction Init(const Arch& arch, std::uint64_t seed) {
  arch.Validate();
  QFunction q;
  q.arch = arch;
  q.params = Vector::Zero(static_cast<Eigen::Index>(arch.ParamCount()));
  Rng rng(DeriveSeed(seed, 0x1417));
  for (const Segment& s : Layout(arch)) {
    if (s.is_bias) continue;
    const double limit = std::sqrt(6.0 / s.fan_in);
    for (std::size_t i = 0; i < s.size; ++i) {
      q.params[static_cast<Eigen::Index>(s.offset + i)] =
          Uniform(rng, -limit, limit);
    }
  }
  return q;
}

double Forward(const QFunction& q, std::span<const double> images,
               const Action& action) {
  const Sample s{images, action, 0.0};
  Pass pass;
  return Net(q).Run(std::span(&s, 1), pass)(0, 0);
}

Trunk ComputeTrunk(const QFunction& q, std::span<const double> images) {
  Net net(q);
  Pass pass;
  const std::span<const double> one[] = {images};
  const Mat flat = net.ConvForward(one, pass);
  const int out = q.arch.hidden.empty() ? 1 : q.arch.hidden[0];
  ConstRowMap w = net.Weights(net.DenseSeg(0), out);
  Trunk t;
  t.pre = w.leftCols(flat.rows()) * flat.col(0) + net.Bias(net.DenseSeg(0) + 1);
  return t;
}

double Head(const QFunction& q, const Trunk& trunk, const Action& action) {
  Net net(q);
  const Arch& arch = q.arch;
  const int out = arch.hidden.empty() ? 1 : arch.hidden[0];
  ConstRowMap w = net.Weights(net.DenseSeg(0), out);
  Vector z = trunk.pre;
  const Eigen::Index fs = arch.FlatSize();
  for (int i = 0; i < arch.action_dim; ++i) z += w.col(fs + i) * action[i];
  for (std::size_t j = 1; j <= arch.hidden.size(); ++j) {
    const Vector a = arch.rectify ? Vector(z.cwiseMax(0.0)) : z;
    ConstRowMap wj = net.Weights(net.DenseSeg(j), net.DenseOut(j));
    z = wj * a + net.Bias(net.DenseSeg(j) + 1);
  }
  return z[0];
}

LossGrad Gradient(const QFunction& q, std::span<const Sample> batch) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  Net net(q);
  Pass pass;
  const Mat out = net.Run(batch, pass);
  const double n = static_cast<double>(batch.size());
  Mat d_out(1, out.cols());
  LossGrad lg;
  for (Eigen::Index b = 0; b < out.cols(); ++b) {
    const double diff = out(0, b) - batch[b].label;
    lg.loss += diff * diff / n;
    d_out(0, b) = 2.0 * diff / n;
  }
  lg.grad = net.Backward(pass, d_out);
  return lg;
}

double SgdStep(QFunction& q, std::span<const Sample> batch, double lr,
               std::int64_t batch_id) {
  if (!(lr > 0)) throw std::invalid_argument("learning rate must be > 0");
  LossGrad lg = Gradient(q, batch);
  if (!std::isfinite(lg.loss) || !lg.grad.allFinite()) {
    throw std::runtime_error("non-finite loss in batch " +
                             std::to_string(batch_id));
  }
  q.params -= lr * lg.grad;
  ++q.step_count;
  return lg.loss;
}

double GradCheck(const QFunction& q, const Sample& sample, double epsilon,
                 Rng& rng, int n_params, const GradTamper& tamper) {
  if (!(epsilon >= 1e-7 && epsilon <= 1e-3)) {
    throw std::invalid_argument("epsilon must be in [1e-7, 1e-3]");
  }
  const std::span<const Sample> batch(&sample, 1);
  Vector grad = Gradient(q, batch).grad;
  if (tamper) tamper(q.arch, grad);
  const auto layout = Layout(q.arch);
  QFunction probe = q;
  double worst = 0.0;
  for (int k = 0; k < n_params; ++k) {
    const Segment& s = layout[k % layout.size()];
    const auto idx = static_cast<Eigen::Index>(s.offset + UniformIndex(rng, s.size));
    const double orig = probe.params[idx];
    probe.params[idx] = orig + epsilon;
    const double up = Gradient(probe, batch).loss;
    probe.params[idx] = orig - epsilon;
    const double down = Gradient(probe, batch).loss;
    probe.params[idx] = orig;
    const double numeric = (up - down) / (2.0 * epsilon);
    const double analytic = grad[idx];
    const double scale = std::max(std::abs(numeric), std::abs(analytic));
    if (scale < 1e-10) continue;
    worst = std::max(worst, std::abs(numeric - analytic) / scale);
  }
  return worst;
}

}  // namespace hse3s::nn
