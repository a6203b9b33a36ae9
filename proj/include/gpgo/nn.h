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

#ifndef GPGO_NN_H_
#define GPGO_NN_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gpgo/encoding.h"

namespace gpgo {

enum class NetworkFamily : uint32_t {
  kMobileSE = 0,
  kMobile = 1,
  kResidual = 2,
};

// Architecture of a two-headed network. Text forms:
//   se.<blocks>.<block_planes>.<trunk>      MobileNet block with SE
//   mobile.<blocks>.<block_planes>.<trunk>  MobileNet block without SE
//   residual.<blocks>.<planes>
// "se.<blocks>.<trunk>" is accepted as shorthand for block_planes = 6*trunk.
struct NetworkDescriptor {
  NetworkFamily family = NetworkFamily::kMobileSE;
  int blocks = 0;
  int trunk_planes = 0;
  int block_planes = 0;  // 0 for residual networks
  int se_ratio = 16;
  int input_planes = planes::kCount;
  int board_size = 19;
  bool pass_logit = true;

  static constexpr int kExpansion = 6;
  static constexpr int kValueHidden = 50;

  // Throws std::invalid_argument.
  static NetworkDescriptor Parse(std::string_view name, int board_size = 19);
  static NetworkDescriptor MobileSE(int blocks, int trunk, int board_size = 19);
  static NetworkDescriptor Residual(int blocks, int planes, int board_size = 19);

  std::string Name() const;
  void Validate() const;
  bool is_mobile() const { return family != NetworkFamily::kResidual; }
  int se_planes() const;

  friend bool operator==(const NetworkDescriptor&,
                         const NetworkDescriptor&) = default;
};

struct TensorSpec {
  std::string name;
  std::vector<int> dims;
  int64_t size() const;
};

// Every tensor of build(desc), in serialization order. Convolution weights are
// [out][in][kh][kw], depthwise [channels][1][3][3], dense [out][in].
std::vector<TensorSpec> Layout(const NetworkDescriptor& desc);

int64_t ParamCount(const NetworkDescriptor& desc);

struct ParamGroup {
  std::string name;
  int64_t count;
};
// Parameter totals by component: stem, one entry for all blocks, heads.
std::vector<ParamGroup> ParamBreakdown(const NetworkDescriptor& desc);

struct NamedTensor {
  std::string name;
  std::vector<int> dims;
  std::vector<float> values;
};

struct NetOutput {
  // size*size spatial logits followed by the pass logit.
  std::vector<float> policy_logits;
  // Probability that White wins.
  float value = 0.5f;
};

// Pass logit used when the descriptor has no pass head.
constexpr float kNoPassLogit = -1.0e4f;
// Keras BatchNormalization default.
constexpr float kBatchNormEpsilon = 1.0e-3f;

class Network {
 public:
  // He-uniform weights from a portable generator; batch-norm layers start at
  // the identity. Same seed, same bits.
  static Network Build(const NetworkDescriptor& desc, uint64_t seed);
  // All weights zero and batch-norm variances one.
  static Network Zero(const NetworkDescriptor& desc);
  // Adopts tensors after checking them against Layout(desc).
  static Network FromTensors(const NetworkDescriptor& desc,
                             std::vector<NamedTensor> tensors);

  const NetworkDescriptor& descriptor() const { return desc_; }
  std::span<const NamedTensor> tensors() const { return tensors_; }
  const NamedTensor& tensor(std::string_view name) const;
  NamedTensor& mutable_tensor(std::string_view name);
  int64_t num_parameters() const;

  // Deterministic and reentrant; each call owns its scratch space.
  NetOutput Forward(const InputTensor& input) const;
  std::vector<NetOutput> Forward(std::span<const InputTensor> batch) const;
  // Raw planes, plane-major, input_planes x size x size.
  NetOutput Forward(std::span<const float> planes) const;

 private:
  Network() = default;

  NetworkDescriptor desc_;
  std::vector<NamedTensor> tensors_;
};

// Squeeze-and-excitation on a channels x area feature map: global average
// pool, bias-free dense to `reduced` with ReLU, bias-free dense back with a
// sigmoid, then per-channel scaling. `reduce` is [reduced][channels],
// `expand` is [channels][reduced]. Throws std::invalid_argument on shape
// mismatch.
std::vector<float> SeForward(std::span<const float> features, int channels,
                             int area, std::span<const float> reduce,
                             std::span<const float> expand, int reduced);

class WeightFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr char kWeightMagic[4] = {'G', 'P', 'G', 'O'};
constexpr uint32_t kWeightFormatVersion = 1;

std::string SaveWeights(const Network& net);
// Throws WeightFormatError.
Network LoadWeights(std::string_view bytes);
void SaveWeightsToFile(const Network& net, const std::string& path);
Network LoadWeightsFromFile(const std::string& path);

struct BenchResult {
  std::string name;
  int batch_size;
  double batches_per_second;
  double examples_per_second() const { return batches_per_second * batch_size; }
};

// Runs forward passes on `batch_size` inputs for about `seconds` after one
// warm-up batch.
BenchResult BenchForward(const Network& net, int batch_size, double seconds);

}  // namespace gpgo

#endif  // GPGO_NN_H_
