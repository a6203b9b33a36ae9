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

#ifndef GPGO_ENCODING_H_
#define GPGO_ENCODING_H_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gpgo/board.h"

namespace gpgo {

// Input plane layout. The order is part of the weight-file contract: any
// change must also change kPlaneOrderName (and therefore PlaneOrderHash()).
//
//   0-1    current Black / White stones
//   2-11   Black / White stones of the 5 predecessor positions, most recent
//          first; missing predecessors are all-zero
//   12-15  liberties of the string at each stone, one-hot {1, 2, 3, >=4}
//   16-17  ladder status of the stone: captured / escapes
//   18-19  ladder status of adjacent enemy strings: captured / escapes
//   20     side to move, all ones iff White
namespace planes {
constexpr int kCurrentBlack = 0;
constexpr int kCurrentWhite = 1;
constexpr int kHistoryBegin = 2;
constexpr int kLibertiesBegin = 12;
constexpr int kLadderCaptured = 16;
constexpr int kLadderEscapes = 17;
constexpr int kAdjacentLadderCaptured = 18;
constexpr int kAdjacentLadderEscapes = 19;
constexpr int kWhiteToPlay = 20;
constexpr int kCount = 21;
}  // namespace planes

inline constexpr std::string_view kPlaneOrderName =
    "gpgo.planes.v1:"
    "black,white,"
    "black-1,white-1,black-2,white-2,black-3,white-3,black-4,white-4,"
    "black-5,white-5,"
    "libs-1,libs-2,libs-3,libs-4plus,"
    "ladder-captured,ladder-escapes,"
    "adjacent-ladder-captured,adjacent-ladder-escapes,"
    "white-to-play";

// FNV-1a of kPlaneOrderName.
uint64_t PlaneOrderHash();

// 21 x size x size binary planes, plane-major.
class InputTensor {
 public:
  InputTensor() = default;
  explicit InputTensor(int board_size)
      : board_size_(board_size),
        data_(static_cast<size_t>(planes::kCount) * board_size * board_size) {}

  int board_size() const { return board_size_; }
  int num_planes() const { return planes::kCount; }
  int plane_area() const { return board_size_ * board_size_; }

  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }
  std::span<const float> plane(int k) const {
    return std::span<const float>(data_).subspan(
        static_cast<size_t>(k) * plane_area(), plane_area());
  }
  std::span<float> plane(int k) {
    return std::span<float>(data_).subspan(
        static_cast<size_t>(k) * plane_area(), plane_area());
  }
  float at(int k, int point) const { return plane(k)[point]; }

  friend bool operator==(const InputTensor&, const InputTensor&) = default;

 private:
  int board_size_ = 0;
  std::vector<float> data_;
};

InputTensor Encode(const Board& b);

struct TrainingExample {
  InputTensor input;
  // Row-major point index, or size*size for a pass.
  int policy_label = 0;
  // 0 if Black won, 1 if White won.
  int value_label = 0;
};

int PolicyIndex(const Move& m, int board_size);
Move MoveFromPolicyIndex(int index, Color color, int board_size);

// Throws IllegalMoveError if `played` is not legal in `b`, and
// std::invalid_argument if `winner` is not a color.
TrainingExample MakeExample(const Board& b, const Move& played, Color winner);

// The eight symmetries of the square. Rotations are clockwise; kRotate90
// maps (row, col) to (col, size-1-row).
enum class Symmetry : uint8_t {
  kIdentity = 0,
  kRotate90,
  kRotate180,
  kRotate270,
  kFlipHorizontal,  // mirror columns
  kFlipVertical,    // mirror rows
  kTranspose,
  kAntiTranspose,
};

inline constexpr std::array<Symmetry, 8> kAllSymmetries = {
    Symmetry::kIdentity,       Symmetry::kRotate90,
    Symmetry::kRotate180,      Symmetry::kRotate270,
    Symmetry::kFlipHorizontal, Symmetry::kFlipVertical,
    Symmetry::kTranspose,      Symmetry::kAntiTranspose,
};

Symmetry Inverse(Symmetry s);
int TransformPoint(int point, Symmetry s, int board_size);
// Pass (size*size) maps to itself.
int TransformPolicyIndex(int index, Symmetry s, int board_size);
InputTensor Transform(const InputTensor& t, Symmetry s);
// Applies `s` to every spatial plane of a (planes x size x size) buffer.
std::vector<float> TransformPlanes(std::span<const float> data, int num_planes,
                                   Symmetry s, int board_size);
// Transforms the grid and the predecessor grids; the superko history of the
// result only covers those predecessors.
Board Transform(const Board& b, Symmetry s);

struct AugmentedExample {
  Symmetry symmetry;
  InputTensor input;
  int policy_label;
};

std::array<AugmentedExample, 8> Symmetries(const InputTensor& t,
                                           int policy_label);

}  // namespace gpgo

#endif  // GPGO_ENCODING_H_
