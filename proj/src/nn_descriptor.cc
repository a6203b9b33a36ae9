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

#include <algorithm>
#include <charconv>
#include <numeric>

#include "gpgo/nn.h"

namespace gpgo {

namespace {

std::vector<std::string_view> SplitDots(std::string_view s) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t dot = s.find('.', start);
    parts.push_back(s.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

int ParsePositive(std::string_view field, std::string_view name) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || value <= 0) {
    throw std::invalid_argument("bad network name '" + std::string(name) +
                                "'");
  }
  return value;
}

void AddBatchNorm(std::vector<TensorSpec>& out, const std::string& prefix,
                  int channels, bool with_scale) {
  if (with_scale) out.push_back({prefix + ".gamma", {channels}});
  out.push_back({prefix + ".beta", {channels}});
  out.push_back({prefix + ".mean", {channels}});
  out.push_back({prefix + ".var", {channels}});
}

}  // namespace

int64_t TensorSpec::size() const {
  return std::accumulate(dims.begin(), dims.end(), int64_t{1},
                         std::multiplies<>());
}

NetworkDescriptor NetworkDescriptor::Parse(std::string_view name,
                                           int board_size) {
  auto parts = SplitDots(name);
  NetworkDescriptor d;
  d.board_size = board_size;
  if (parts[0] == "se" || parts[0] == "mobile") {
    d.family = parts[0] == "se" ? NetworkFamily::kMobileSE
                                : NetworkFamily::kMobile;
    if (parts.size() == 4) {
      d.blocks = ParsePositive(parts[1], name);
      d.block_planes = ParsePositive(parts[2], name);
      d.trunk_planes = ParsePositive(parts[3], name);
    } else if (parts.size() == 3) {
      d.blocks = ParsePositive(parts[1], name);
      d.trunk_planes = ParsePositive(parts[2], name);
      d.block_planes = kExpansion * d.trunk_planes;
    } else {
      throw std::invalid_argument("bad network name '" + std::string(name) +
                                  "'");
    }
  } else if (parts[0] == "residual" && parts.size() == 3) {
    d.family = NetworkFamily::kResidual;
    d.blocks = ParsePositive(parts[1], name);
    d.trunk_planes = ParsePositive(parts[2], name);
    d.block_planes = 0;
  } else {
    throw std::invalid_argument("bad network name '" + std::string(name) +
                                "'");
  }
  d.Validate();
  return d;
}

NetworkDescriptor NetworkDescriptor::MobileSE(int blocks, int trunk,
                                              int board_size) {
  NetworkDescriptor d;
  d.blocks = blocks;
  d.trunk_planes = trunk;
  d.block_planes = kExpansion * trunk;
  d.board_size = board_size;
  d.Validate();
  return d;
}

NetworkDescriptor NetworkDescriptor::Residual(int blocks, int planes,
                                              int board_size) {
  NetworkDescriptor d;
  d.family = NetworkFamily::kResidual;
  d.blocks = blocks;
  d.trunk_planes = planes;
  d.block_planes = 0;
  d.board_size = board_size;
  d.Validate();
  return d;
}

std::string NetworkDescriptor::Name() const {
  switch (family) {
    case NetworkFamily::kMobileSE:
    case NetworkFamily::kMobile:
      return std::string(family == NetworkFamily::kMobileSE ? "se" : "mobile") +
             "." + std::to_string(blocks) + "." +
             std::to_string(block_planes) + "." +
             std::to_string(trunk_planes);
    case NetworkFamily::kResidual:
      return "residual." + std::to_string(blocks) + "." +
             std::to_string(trunk_planes);
  }
  return "unknown";
}

void NetworkDescriptor::Validate() const {
  auto fail = [](const std::string& why) {
    throw std::invalid_argument("invalid network descriptor: " + why);
  };
  if (family != NetworkFamily::kMobileSE && family != NetworkFamily::kMobile &&
      family != NetworkFamily::kResidual) {
    fail("unknown family");
  }
  if (blocks < 0) fail("negative block count");
  if (trunk_planes <= 0) fail("trunk planes must be positive");
  if (is_mobile() && block_planes <= 0) fail("block planes must be positive");
  if (!is_mobile() && block_planes != 0) {
    fail("residual networks have no block planes");
  }
  if (family == NetworkFamily::kMobileSE && se_ratio <= 0) {
    fail("SE ratio must be positive");
  }
  if (input_planes <= 0) fail("input planes must be positive");
  if (board_size < 1 || board_size > kMaxBoardSize) fail("board size");
}

int NetworkDescriptor::se_planes() const {
  return std::max(1, trunk_planes / se_ratio);
}

std::vector<TensorSpec> Layout(const NetworkDescriptor& desc) {
  desc.Validate();
  const int w = desc.trunk_planes;
  const int b = desc.block_planes;
  std::vector<TensorSpec> out;
  out.push_back({"stem.conv.weight", {w, desc.input_planes, 1, 1}});
  out.push_back({"stem.conv.bias", {w}});
  if (desc.is_mobile()) AddBatchNorm(out, "stem.bn", w, true);
  for (int i = 0; i < desc.blocks; ++i) {
    const std::string p = "block" + std::to_string(i) + ".";
    if (desc.is_mobile()) {
      out.push_back({p + "expand.weight", {b, w, 1, 1}});
      AddBatchNorm(out, p + "expand_bn", b, true);
      out.push_back({p + "depthwise.weight", {b, 1, 3, 3}});
      AddBatchNorm(out, p + "depthwise_bn", b, true);
      out.push_back({p + "project.weight", {w, b, 1, 1}});
      AddBatchNorm(out, p + "project_bn", w, true);
      if (desc.family == NetworkFamily::kMobileSE) {
        const int r = desc.se_planes();
        out.push_back({p + "se.reduce.weight", {r, w}});
        out.push_back({p + "se.expand.weight", {w, r}});
      }
    } else {
      out.push_back({p + "conv1.weight", {w, w, 3, 3}});
      AddBatchNorm(out, p + "bn1", w, false);
      out.push_back({p + "conv2.weight", {w, w, 3, 3}});
      AddBatchNorm(out, p + "bn2", w, false);
    }
  }
  out.push_back({"policy.conv.weight", {1, w, 1, 1}});
  if (desc.pass_logit) {
    out.push_back({"policy.pass.weight", {1, w}});
    out.push_back({"policy.pass.bias", {1}});
  }
  const int h = NetworkDescriptor::kValueHidden;
  out.push_back({"value.fc1.weight", {h, w}});
  out.push_back({"value.fc1.bias", {h}});
  out.push_back({"value.fc2.weight", {1, h}});
  out.push_back({"value.fc2.bias", {1}});
  return out;
}

int64_t ParamCount(const NetworkDescriptor& desc) {
  int64_t total = 0;
  for (const auto& t : Layout(desc)) total += t.size();
  return total;
}

std::vector<ParamGroup> ParamBreakdown(const NetworkDescriptor& desc) {
  std::vector<ParamGroup> groups = {
      {"stem", 0}, {"blocks", 0}, {"policy", 0}, {"pass", 0}, {"value", 0}};
  for (const auto& t : Layout(desc)) {
    std::string_view n = t.name;
    size_t k = n.starts_with("stem.")           ? 0
               : n.starts_with("block")         ? 1
               : n.starts_with("policy.pass.")  ? 3
               : n.starts_with("policy.")       ? 2
                                                : 4;
    groups[k].count += t.size();
  }
  if (!desc.pass_logit) groups.erase(groups.begin() + 3);
  return groups;
}

}  // namespace gpgo
