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

#include "gpgo/encoding.h"

#include <algorithm>
#include <stdexcept>

namespace gpgo {

uint64_t PlaneOrderHash() {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : kPlaneOrderName) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

void FillStones(std::span<const Color> grid, std::span<float> black,
                std::span<float> white) {
  for (size_t p = 0; p < grid.size(); ++p) {
    black[p] = grid[p] == Color::kBlack ? 1.0f : 0.0f;
    white[p] = grid[p] == Color::kWhite ? 1.0f : 0.0f;
  }
}

}  // namespace

InputTensor Encode(const Board& b) {
  InputTensor t(b.size());
  const int n = b.num_points();

  FillStones(b.grid(), t.plane(planes::kCurrentBlack),
             t.plane(planes::kCurrentWhite));
  for (int i = 0; i < b.num_predecessors(); ++i) {
    int k = planes::kHistoryBegin + 2 * i;
    FillStones(b.predecessor(i), t.plane(k), t.plane(k + 1));
  }

  // Per-string features are computed once and written to every stone.
  struct StringFeatures {
    int liberties;
    LadderStatus ladder;
    LadderStatus adjacent;
  };
  std::vector<int> owner(n, -1);
  std::vector<StringFeatures> features;
  for (int p = 0; p < n; ++p) {
    if (b.at(p) == Color::kEmpty) continue;
    int id = b.StringId(p);
    if (owner[id] < 0) {
      owner[id] = static_cast<int>(features.size());
      features.push_back({b.Liberties(p), LadderStatusAt(b, p),
                          AdjacentLadderStatus(b, p)});
    }
    const StringFeatures& f = features[owner[id]];
    int bucket = std::min(f.liberties, 4) - 1;
    t.plane(planes::kLibertiesBegin + bucket)[p] = 1.0f;
    if (f.ladder == LadderStatus::kCapturedInLadder) {
      t.plane(planes::kLadderCaptured)[p] = 1.0f;
    } else if (f.ladder == LadderStatus::kEscapesLadder) {
      t.plane(planes::kLadderEscapes)[p] = 1.0f;
    }
    if (f.adjacent == LadderStatus::kCapturedInLadder) {
      t.plane(planes::kAdjacentLadderCaptured)[p] = 1.0f;
    } else if (f.adjacent == LadderStatus::kEscapesLadder) {
      t.plane(planes::kAdjacentLadderEscapes)[p] = 1.0f;
    }
  }

  if (b.to_play() == Color::kWhite) {
    std::ranges::fill(t.plane(planes::kWhiteToPlay), 1.0f);
  }
  return t;
}

int PolicyIndex(const Move& m, int board_size) {
  return m.is_pass() ? board_size * board_size : m.point;
}

Move MoveFromPolicyIndex(int index, Color color, int board_size) {
  if (index < 0 || index > board_size * board_size) {
    throw std::out_of_range("policy index");
  }
  return index == board_size * board_size ? Move::Pass(color)
                                          : Move::Play(color, index);
}

TrainingExample MakeExample(const Board& b, const Move& played, Color winner) {
  if (winner == Color::kEmpty) {
    throw std::invalid_argument("winner must be Black or White");
  }
  if (auto reason = b.CheckMove(played)) {
    throw IllegalMoveError(*reason, std::string("example move is illegal: ") +
                                        IllegalReasonName(*reason));
  }
  TrainingExample ex;
  ex.input = Encode(b);
  ex.policy_label = PolicyIndex(played, b.size());
  ex.value_label = winner == Color::kBlack ? 0 : 1;
  return ex;
}

Symmetry Inverse(Symmetry s) {
  switch (s) {
    case Symmetry::kRotate90:
      return Symmetry::kRotate270;
    case Symmetry::kRotate270:
      return Symmetry::kRotate90;
    default:
      return s;
  }
}

int TransformPoint(int point, Symmetry s, int board_size) {
  const int last = board_size - 1;
  int r = point / board_size;
  int c = point % board_size;
  int nr = r;
  int nc = c;
  switch (s) {
    case Symmetry::kIdentity:
      break;
    case Symmetry::kRotate90:
      nr = c;
      nc = last - r;
      break;
    case Symmetry::kRotate180:
      nr = last - r;
      nc = last - c;
      break;
    case Symmetry::kRotate270:
      nr = last - c;
      nc = r;
      break;
    case Symmetry::kFlipHorizontal:
      nc = last - c;
      break;
    case Symmetry::kFlipVertical:
      nr = last - r;
      break;
    case Symmetry::kTranspose:
      nr = c;
      nc = r;
      break;
    case Symmetry::kAntiTranspose:
      nr = last - c;
      nc = last - r;
      break;
  }
  return nr * board_size + nc;
}

int TransformPolicyIndex(int index, Symmetry s, int board_size) {
  if (index == board_size * board_size) return index;
  return TransformPoint(index, s, board_size);
}

std::vector<float> TransformPlanes(std::span<const float> data, int num_planes,
                                   Symmetry s, int board_size) {
  const int area = board_size * board_size;
  if (static_cast<int>(data.size()) != num_planes * area) {
    throw std::invalid_argument("plane buffer size mismatch");
  }
  std::vector<float> out(data.size());
  for (int p = 0; p < area; ++p) {
    int q = TransformPoint(p, s, board_size);
    for (int k = 0; k < num_planes; ++k) {
      out[k * area + q] = data[k * area + p];
    }
  }
  return out;
}

InputTensor Transform(const InputTensor& t, Symmetry s) {
  InputTensor out(t.board_size());
  auto moved = TransformPlanes(t.data(), t.num_planes(), s, t.board_size());
  std::ranges::copy(moved, out.data().begin());
  return out;
}

Board Transform(const Board& b, Symmetry s) {
  auto move_grid = [&](std::span<const Color> grid) {
    std::vector<Color> out(grid.size());
    for (int p = 0; p < b.num_points(); ++p) {
      out[TransformPoint(p, s, b.size())] = grid[p];
    }
    return out;
  };
  std::vector<std::vector<Color>> history;
  for (int i = 0; i < b.num_predecessors(); ++i) {
    history.push_back(move_grid(b.predecessor(i)));
  }
  return Board::FromGrid(b.size(), b.komi(), move_grid(b.grid()), b.to_play(),
                         history);
}

std::array<AugmentedExample, 8> Symmetries(const InputTensor& t,
                                           int policy_label) {
  std::array<AugmentedExample, 8> out;
  for (size_t i = 0; i < kAllSymmetries.size(); ++i) {
    Symmetry s = kAllSymmetries[i];
    out[i] = {s, Transform(t, s),
              TransformPolicyIndex(policy_label, s, t.board_size())};
  }
  return out;
}

}  // namespace gpgo
