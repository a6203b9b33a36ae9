// Copyright 2026 The gpgo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <Eigen/Core>
#include <algorithm>
#include <chrono>
#include <cmath>

#include "gpgo/nn.h"

namespace gpgo {

namespace {

// Feature maps are channels x area, row-major, which Eigen sees as a
// column-major area x channels matrix.
using Matrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic>;
using ConstMap = Eigen::Map<const Matrix>;
using MutableMap = Eigen::Map<Matrix>;
using ConstVectorMap = Eigen::Map<const Eigen::VectorXf>;
using VectorMap = Eigen::Map<Eigen::VectorXf>;

float Sigmoid(float x) { return 1.0f / (1.0f + std::exp(-x)); }

void Relu(std::span<float> x) {
  for (float& v : x) v = std::max(v, 0.0f);
}

void Conv1x1(const float* in, int in_ch, int area, const float* weight,
             int out_ch, float* out) {
  ConstMap x(in, area, in_ch);
  ConstMap w(weight, in_ch, out_ch);
  MutableMap y(out, area, out_ch);
  y.noalias() = x * w;
}

void AddBias(float* data, int channels, int area, const float* bias) {
  for (int c = 0; c < channels; ++c) {
    float b = bias[c];
    float* row = data + static_cast<size_t>(c) * area;
    for (int p = 0; p < area; ++p) row[p] += b;
  }
}

// Full 3x3 convolution, same padding, via im2col and one GEMM.
void Conv3x3(const float* in, int in_ch, int size, const float* weight,
             int out_ch, float* out, std::vector<float>& cols) {
  const int area = size * size;
  cols.assign(static_cast<size_t>(area) * in_ch * 9, 0.0f);
  for (int c = 0; c < in_ch; ++c) {
    const float* src = in + static_cast<size_t>(c) * area;
    for (int k = 0; k < 9; ++k) {
      const int dy = k / 3 - 1;
      const int dx = k % 3 - 1;
      float* dst = cols.data() + static_cast<size_t>(c * 9 + k) * area;
      for (int y = 0; y < size; ++y) {
        int sy = y + dy;
        if (sy < 0 || sy >= size) continue;
        for (int x = 0; x < size; ++x) {
          int sx = x + dx;
          if (sx < 0 || sx >= size) continue;
          dst[y * size + x] = src[sy * size + sx];
        }
      }
    }
  }
  ConstMap x(cols.data(), area, in_ch * 9);
  ConstMap w(weight, in_ch * 9, out_ch);
  MutableMap y(out, area, out_ch);
  y.noalias() = x * w;
}

void Depthwise3x3(const float* in, int channels, int size, const float* weight,
                  float* out) {
  const int area = size * size;
  for (int c = 0; c < channels; ++c) {
    const float* src = in + static_cast<size_t>(c) * area;
    const float* k = weight + static_cast<size_t>(c) * 9;
    float* dst = out + static_cast<size_t>(c) * area;
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        float acc = 0.0f;
        for (int ky = 0; ky < 3; ++ky) {
          int sy = y + ky - 1;
          if (sy < 0 || sy >= size) continue;
          for (int kx = 0; kx < 3; ++kx) {
            int sx = x + kx - 1;
            if (sx < 0 || sx >= size) continue;
            acc += k[ky * 3 + kx] * src[sy * size + sx];
          }
        }
        dst[y * size + x] = acc;
      }
    }
  }
}

// Inference-mode batch norm; gamma == nullptr means centre-only.
void BatchNorm(float* data, int channels, int area, const float* gamma,
               const float* beta, const float* mean, const float* var) {
  for (int c = 0; c < channels; ++c) {
    float scale = 1.0f / std::sqrt(var[c] + kBatchNormEpsilon);
    if (gamma != nullptr) scale *= gamma[c];
    float shift = beta[c] - mean[c] * scale;
    float* row = data + static_cast<size_t>(c) * area;
    for (int p = 0; p < area; ++p) row[p] = row[p] * scale + shift;
  }
}

void GlobalAveragePool(const float* data, int channels, int area, float* out) {
  ConstMap x(data, area, channels);
  VectorMap(out, channels) = x.colwise().mean().transpose();
}

// weight is [out][in].
void Dense(const float* in, int in_dim, const float* weight, int out_dim,
           const float* bias, float* out) {
  ConstMap w(weight, in_dim, out_dim);
  VectorMap y(out, out_dim);
  y.noalias() = w.transpose() * ConstVectorMap(in, in_dim);
  if (bias != nullptr) y += ConstVectorMap(bias, out_dim);
}

void SqueezeExciteInPlace(float* data, int channels, int area,
                          const float* reduce, const float* expand,
                          int reduced) {
  std::vector<float> pooled(channels);
  std::vector<float> hidden(reduced);
  std::vector<float> gate(channels);
  GlobalAveragePool(data, channels, area, pooled.data());
  Dense(pooled.data(), channels, reduce, reduced, nullptr, hidden.data());
  Relu(hidden);
  Dense(hidden.data(), reduced, expand, channels, nullptr, gate.data());
  for (int c = 0; c < channels; ++c) {
    float g = Sigmoid(gate[c]);
    float* row = data + static_cast<size_t>(c) * area;
    for (int p = 0; p < area; ++p) row[p] *= g;
  }
}

}  // namespace

std::vector<float> SeForward(std::span<const float> features, int channels,
                             int area, std::span<const float> reduce,
                             std::span<const float> expand, int reduced) {
  if (channels <= 0 || area <= 0 || reduced <= 0 ||
      features.size() != static_cast<size_t>(channels) * area ||
      reduce.size() != static_cast<size_t>(reduced) * channels ||
      expand.size() != static_cast<size_t>(channels) * reduced) {
    throw std::invalid_argument("squeeze-excitation shape mismatch");
  }
  std::vector<float> out(features.begin(), features.end());
  SqueezeExciteInPlace(out.data(), channels, area, reduce.data(),
                       expand.data(), reduced);
  return out;
}

NetOutput Network::Forward(const InputTensor& input) const {
  if (input.board_size() != desc_.board_size) {
    throw std::invalid_argument("input board size does not match network");
  }
  return Forward(input.data());
}

std::vector<NetOutput> Network::Forward(
    std::span<const InputTensor> batch) const {
  std::vector<NetOutput> out;
  out.reserve(batch.size());
  for (const auto& t : batch) out.push_back(Forward(t));
  return out;
}

NetOutput Network::Forward(std::span<const float> input) const {
  const int size = desc_.board_size;
  const int area = size * size;
  const int w = desc_.trunk_planes;
  const int b = desc_.block_planes;
  if (input.size() != static_cast<size_t>(desc_.input_planes) * area) {
    throw std::invalid_argument("input plane count does not match network");
  }

  std::vector<float> x(static_cast<size_t>(w) * area);
  std::vector<float> h1(static_cast<size_t>(std::max(w, b)) * area);
  std::vector<float> h2(static_cast<size_t>(std::max(w, b)) * area);
  std::vector<float> cols;

  // Tensors are stored in Layout() order, so parameters are consumed in
  // sequence rather than looked up by name.
  size_t cursor = 0;
  auto next = [&]() { return tensors_[cursor++].values.data(); };
  auto bn = [&](float* data, int channels, bool scaled) {
    const float* gamma = scaled ? next() : nullptr;
    const float* beta = next();
    const float* mean = next();
    const float* var = next();
    BatchNorm(data, channels, area, gamma, beta, mean, var);
  };

  Conv1x1(input.data(), desc_.input_planes, area, next(), w, x.data());
  AddBias(x.data(), w, area, next());
  if (desc_.is_mobile()) bn(x.data(), w, true);
  Relu(x);

  for (int i = 0; i < desc_.blocks; ++i) {
    if (desc_.is_mobile()) {
      std::span<float> expanded(h1.data(), static_cast<size_t>(b) * area);
      std::span<float> spatial(h2.data(), static_cast<size_t>(b) * area);
      Conv1x1(x.data(), w, area, next(), b, h1.data());
      bn(h1.data(), b, true);
      Relu(expanded);
      Depthwise3x3(h1.data(), b, size, next(), h2.data());
      bn(h2.data(), b, true);
      Relu(spatial);
      Conv1x1(h2.data(), b, area, next(), w, h1.data());
      bn(h1.data(), w, true);
      if (desc_.family == NetworkFamily::kMobileSE) {
        const float* reduce = next();
        const float* expand = next();
        SqueezeExciteInPlace(h1.data(), w, area, reduce, expand,
                             desc_.se_planes());
      }
      for (size_t k = 0; k < x.size(); ++k) x[k] += h1[k];
    } else {
      std::span<float> inner(h1.data(), static_cast<size_t>(w) * area);
      Conv3x3(x.data(), w, size, next(), w, h1.data(), cols);
      bn(h1.data(), w, false);
      Relu(inner);
      Conv3x3(h1.data(), w, size, next(), w, h2.data(), cols);
      bn(h2.data(), w, false);
      for (size_t k = 0; k < x.size(); ++k) x[k] = std::max(x[k] + h2[k], 0.0f);
    }
  }

  NetOutput out;
  out.policy_logits.resize(area + 1);
  Conv1x1(x.data(), w, area, next(), 1, out.policy_logits.data());

  std::vector<float> pooled(w);
  GlobalAveragePool(x.data(), w, area, pooled.data());
  if (desc_.pass_logit) {
    const float* pass_weight = next();
    const float* pass_bias = next();
    Dense(pooled.data(), w, pass_weight, 1, pass_bias,
          &out.policy_logits[area]);
  } else {
    out.policy_logits[area] = kNoPassLogit;
  }

  const int hidden = NetworkDescriptor::kValueHidden;
  std::vector<float> fc1(hidden);
  const float* fc1_weight = next();
  const float* fc1_bias = next();
  Dense(pooled.data(), w, fc1_weight, hidden, fc1_bias, fc1.data());
  Relu(fc1);
  float logit = 0.0f;
  const float* fc2_weight = next();
  const float* fc2_bias = next();
  Dense(fc1.data(), hidden, fc2_weight, 1, fc2_bias, &logit);
  // Keep the value strictly inside (0, 1) even when the sigmoid saturates.
  out.value = std::clamp(Sigmoid(logit), 1.0e-7f, 1.0f - 1.0e-7f);
  return out;
}

BenchResult BenchForward(const Network& net, int batch_size, double seconds) {
  if (batch_size <= 0) throw std::invalid_argument("batch size must be >= 1");
  const auto& d = net.descriptor();
  std::vector<InputTensor> batch;
  for (int i = 0; i < batch_size; ++i) {
    InputTensor t(d.board_size);
    // Deterministic sparse pattern; cost does not depend on the values.
    auto data = t.data();
    for (size_t k = (i * 7) % 13; k < data.size(); k += 13) data[k] = 1.0f;
    batch.push_back(std::move(t));
  }
  using Clock = std::chrono::steady_clock;
  volatile float sink = net.Forward(batch)[0].value;
  int64_t batches = 0;
  auto start = Clock::now();
  double elapsed = 0.0;
  do {
    sink = sink + net.Forward(batch)[0].value;
    ++batches;
    elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  } while (elapsed < seconds);
  return {d.Name(), batch_size, static_cast<double>(batches) / elapsed};
}

}  // namespace gpgo
