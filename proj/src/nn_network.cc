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

#include <cmath>
#include <random>

#include "gpgo/nn.h"

namespace gpgo {

namespace {

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Fan-in of a weight tensor: everything but the leading output dimension.
int64_t FanIn(const TensorSpec& spec) {
  int64_t fan = 1;
  for (size_t i = 1; i < spec.dims.size(); ++i) fan *= spec.dims[i];
  return fan;
}

}  // namespace

Network Network::Build(const NetworkDescriptor& desc, uint64_t seed) {
  std::mt19937_64 rng(seed);
  // 53-bit uniform in [0, 1); mt19937_64 output is fixed by the standard so
  // this is reproducible across platforms, unlike std::*_distribution.
  auto uniform = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
  Network net;
  net.desc_ = desc;
  for (auto& spec : Layout(desc)) {
    NamedTensor t{spec.name, spec.dims,
                  std::vector<float>(static_cast<size_t>(spec.size()), 0.0f)};
    std::string_view n = t.name;
    if (EndsWith(n, ".weight")) {
      double limit = std::sqrt(6.0 / static_cast<double>(FanIn(spec)));
      for (float& v : t.values) {
        v = static_cast<float>((2.0 * uniform() - 1.0) * limit);
      }
    } else if (EndsWith(n, ".gamma") || EndsWith(n, ".var")) {
      std::ranges::fill(t.values, 1.0f);
    }
    net.tensors_.push_back(std::move(t));
  }
  return net;
}

Network Network::Zero(const NetworkDescriptor& desc) {
  Network net;
  net.desc_ = desc;
  for (auto& spec : Layout(desc)) {
    NamedTensor t{spec.name, spec.dims,
                  std::vector<float>(static_cast<size_t>(spec.size()), 0.0f)};
    if (EndsWith(t.name, ".var")) std::ranges::fill(t.values, 1.0f);
    net.tensors_.push_back(std::move(t));
  }
  return net;
}

Network Network::FromTensors(const NetworkDescriptor& desc,
                             std::vector<NamedTensor> tensors) {
  auto layout = Layout(desc);
  if (tensors.size() != layout.size()) {
    throw std::invalid_argument("expected " + std::to_string(layout.size()) +
                                " tensors, got " +
                                std::to_string(tensors.size()));
  }
  for (size_t i = 0; i < layout.size(); ++i) {
    const auto& t = tensors[i];
    if (t.name != layout[i].name || t.dims != layout[i].dims ||
        static_cast<int64_t>(t.values.size()) != layout[i].size()) {
      throw std::invalid_argument("shape mismatch at layer " +
                                  std::to_string(i) + " (" + layout[i].name +
                                  ")");
    }
  }
  Network net;
  net.desc_ = desc;
  net.tensors_ = std::move(tensors);
  return net;
}

const NamedTensor& Network::tensor(std::string_view name) const {
  for (const auto& t : tensors_) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("no tensor named " + std::string(name));
}

NamedTensor& Network::mutable_tensor(std::string_view name) {
  for (auto& t : tensors_) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("no tensor named " + std::string(name));
}

int64_t Network::num_parameters() const {
  int64_t n = 0;
  for (const auto& t : tensors_) n += static_cast<int64_t>(t.values.size());
  return n;
}

}  // namespace gpgo
