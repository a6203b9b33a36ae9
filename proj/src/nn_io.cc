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

// Weight file layout, all integers little-endian:
//
//   "GPGO"  u32 version
//   u32 family, u32 blocks, u32 trunk_planes, u32 block_planes, u32 se_ratio,
//   u32 input_planes, u32 board_size, u64 plane_order_hash, u32 head_flags
//   then for every tensor of Layout(descriptor), in order:
//     u32 name_length, name bytes (UTF-8), u32 rank, u32 dims[rank],
//     f32 values[prod(dims)] (IEEE-754 binary32, row-major)
//
// head_flags bit 0 is set when the policy head has a pass logit.

#include <bit>
#include <fstream>
#include <sstream>

#include "gpgo/nn.h"

namespace gpgo {

namespace {

constexpr uint32_t kHeadPassLogit = 1u << 0;

class Writer {
 public:
  void Bytes(std::string_view s) { out_.append(s); }
  void U32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void U64(uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void F32(float f) { U32(std::bit_cast<uint32_t>(f)); }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

// Returns false instead of throwing so callers can attach context.
class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}
  bool Bytes(size_t n, std::string_view* out) {
    if (data_.size() - pos_ < n) return false;
    *out = data_.substr(pos_, n);
    pos_ += n;
    return true;
  }
  bool U32(uint32_t* v) {
    std::string_view b;
    if (!Bytes(4, &b)) return false;
    *v = 0;
    for (int i = 0; i < 4; ++i) {
      *v |= static_cast<uint32_t>(static_cast<uint8_t>(b[i])) << (8 * i);
    }
    return true;
  }
  bool U64(uint64_t* v) {
    std::string_view b;
    if (!Bytes(8, &b)) return false;
    *v = 0;
    for (int i = 0; i < 8; ++i) {
      *v |= static_cast<uint64_t>(static_cast<uint8_t>(b[i])) << (8 * i);
    }
    return true;
  }
  bool F32(float* f) {
    uint32_t bits;
    if (!U32(&bits)) return false;
    *f = std::bit_cast<float>(bits);
    return true;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::string_view data_;
  size_t pos_ = 0;
};

}  // namespace

std::string SaveWeights(const Network& net) {
  const auto& d = net.descriptor();
  Writer w;
  w.Bytes(std::string_view(kWeightMagic, 4));
  w.U32(kWeightFormatVersion);
  w.U32(static_cast<uint32_t>(d.family));
  w.U32(static_cast<uint32_t>(d.blocks));
  w.U32(static_cast<uint32_t>(d.trunk_planes));
  w.U32(static_cast<uint32_t>(d.block_planes));
  w.U32(static_cast<uint32_t>(d.se_ratio));
  w.U32(static_cast<uint32_t>(d.input_planes));
  w.U32(static_cast<uint32_t>(d.board_size));
  w.U64(PlaneOrderHash());
  w.U32(d.pass_logit ? kHeadPassLogit : 0u);
  for (const auto& t : net.tensors()) {
    w.U32(static_cast<uint32_t>(t.name.size()));
    w.Bytes(t.name);
    w.U32(static_cast<uint32_t>(t.dims.size()));
    for (int dim : t.dims) w.U32(static_cast<uint32_t>(dim));
    for (float v : t.values) w.F32(v);
  }
  return w.Take();
}

Network LoadWeights(std::string_view bytes) {
  Reader r(bytes);
  std::string_view magic;
  if (!r.Bytes(4, &magic) || magic != std::string_view(kWeightMagic, 4)) {
    throw WeightFormatError("bad magic: not a gpgo weight file");
  }
  uint32_t version = 0;
  if (!r.U32(&version) || version != kWeightFormatVersion) {
    throw WeightFormatError("version mismatch: file has " +
                            std::to_string(version) + ", expected " +
                            std::to_string(kWeightFormatVersion));
  }
  uint32_t fields[7];
  uint64_t plane_hash = 0;
  uint32_t head_flags = 0;
  for (uint32_t& f : fields) {
    if (!r.U32(&f)) throw WeightFormatError("truncated descriptor block");
  }
  if (!r.U64(&plane_hash) || !r.U32(&head_flags)) {
    throw WeightFormatError("truncated descriptor block");
  }
  if (plane_hash != PlaneOrderHash()) {
    throw WeightFormatError(
        "plane-order hash mismatch: weights were trained for a different "
        "input encoding");
  }
  NetworkDescriptor d;
  d.family = static_cast<NetworkFamily>(fields[0]);
  d.blocks = static_cast<int>(fields[1]);
  d.trunk_planes = static_cast<int>(fields[2]);
  d.block_planes = static_cast<int>(fields[3]);
  d.se_ratio = static_cast<int>(fields[4]);
  d.input_planes = static_cast<int>(fields[5]);
  d.board_size = static_cast<int>(fields[6]);
  d.pass_logit = (head_flags & kHeadPassLogit) != 0;
  try {
    d.Validate();
  } catch (const std::invalid_argument& e) {
    throw WeightFormatError(e.what());
  }

  auto layout = Layout(d);
  std::vector<NamedTensor> tensors;
  tensors.reserve(layout.size());
  for (size_t k = 0; k < layout.size(); ++k) {
    const auto& spec = layout[k];
    auto mismatch = [&] {
      return WeightFormatError("shape mismatch at layer " + std::to_string(k) +
                               " (" + spec.name + ")");
    };
    uint32_t name_len = 0;
    std::string_view name;
    uint32_t rank = 0;
    if (!r.U32(&name_len) || !r.Bytes(name_len, &name) || name != spec.name ||
        !r.U32(&rank) || rank != spec.dims.size()) {
      throw mismatch();
    }
    NamedTensor t{spec.name, {}, {}};
    for (uint32_t i = 0; i < rank; ++i) {
      uint32_t dim = 0;
      if (!r.U32(&dim) || static_cast<int>(dim) != spec.dims[i]) {
        throw mismatch();
      }
      t.dims.push_back(static_cast<int>(dim));
    }
    t.values.resize(static_cast<size_t>(spec.size()));
    for (float& v : t.values) {
      if (!r.F32(&v)) throw mismatch();
    }
    tensors.push_back(std::move(t));
  }
  if (!r.done()) throw WeightFormatError("trailing bytes after last layer");
  return Network::FromTensors(d, std::move(tensors));
}

void SaveWeightsToFile(const Network& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  std::string bytes = SaveWeights(net);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

Network LoadWeightsFromFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open weight file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return LoadWeights(ss.str());
}

}  // namespace gpgo
