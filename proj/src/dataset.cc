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

#include <stdexcept>

#include "gpgo/harness.h"

namespace gpgo {

namespace {

void PutLE(std::string& out, uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

uint64_t GetLE(std::string_view in, size_t& pos, int bytes) {
  if (in.size() - pos < static_cast<size_t>(bytes)) {
    throw std::runtime_error("dataset truncated");
  }
  uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    v |= static_cast<uint64_t>(static_cast<uint8_t>(in[pos + i])) << (8 * i);
  }
  pos += bytes;
  return v;
}

}  // namespace

std::string SaveDataset(const std::vector<TrainingExample>& examples,
                        int board_size) {
  std::string out(kDatasetMagic, 4);
  PutLE(out, kDatasetVersion, 4);
  PutLE(out, static_cast<uint32_t>(board_size), 4);
  PutLE(out, planes::kCount, 4);
  PutLE(out, PlaneOrderHash(), 8);
  PutLE(out, examples.size(), 8);
  const size_t bits = static_cast<size_t>(planes::kCount) * board_size * board_size;
  for (const auto& ex : examples) {
    if (ex.input.board_size() != board_size) {
      throw std::invalid_argument("example board size differs from dataset");
    }
    std::string packed((bits + 7) / 8, '\0');
    auto data = ex.input.data();
    for (size_t i = 0; i < bits; ++i) {
      if (data[i] != 0.0f) packed[i / 8] |= static_cast<char>(1u << (i % 8));
    }
    out += packed;
    PutLE(out, static_cast<uint16_t>(ex.policy_label), 2);
    PutLE(out, static_cast<uint8_t>(ex.value_label), 1);
  }
  return out;
}

std::vector<TrainingExample> LoadDataset(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != std::string_view(kDatasetMagic, 4)) {
    throw std::runtime_error("not a gpgo dataset");
  }
  size_t pos = 4;
  if (GetLE(bytes, pos, 4) != kDatasetVersion) {
    throw std::runtime_error("unsupported dataset version");
  }
  const int size = static_cast<int>(GetLE(bytes, pos, 4));
  if (!Board::IsSupportedSize(size)) {
    throw std::runtime_error("dataset has unsupported board size");
  }
  if (GetLE(bytes, pos, 4) != static_cast<uint64_t>(planes::kCount) ||
      GetLE(bytes, pos, 8) != PlaneOrderHash()) {
    throw std::runtime_error("dataset plane layout differs from this build");
  }
  const uint64_t count = GetLE(bytes, pos, 8);
  const size_t bits = static_cast<size_t>(planes::kCount) * size * size;
  std::vector<TrainingExample> out;
  for (uint64_t k = 0; k < count; ++k) {
    TrainingExample ex{InputTensor(size)};
    if (bytes.size() - pos < (bits + 7) / 8) {
      throw std::runtime_error("dataset truncated");
    }
    auto data = ex.input.data();
    for (size_t i = 0; i < bits; ++i) {
      data[i] = (static_cast<uint8_t>(bytes[pos + i / 8]) >> (i % 8)) & 1u;
    }
    pos += (bits + 7) / 8;
    ex.policy_label = static_cast<int>(GetLE(bytes, pos, 2));
    ex.value_label = static_cast<int>(GetLE(bytes, pos, 1));
    out.push_back(std::move(ex));
  }
  if (pos != bytes.size()) throw std::runtime_error("trailing bytes in dataset");
  return out;
}

}  // namespace gpgo
