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

#include "gpgo/board.h"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <sstream>

#include "gpgo/coords.h"

namespace gpgo {

namespace {

struct NeighborTable {
  std::vector<std::array<int16_t, 4>> points;
  std::vector<uint8_t> counts;
};

const NeighborTable& NeighborsFor(int size) {
  static const std::array<NeighborTable, kMaxBoardSize + 1> tables = [] {
    std::array<NeighborTable, kMaxBoardSize + 1> result;
    for (int n = 1; n <= kMaxBoardSize; ++n) {
      auto& t = result[n];
      t.points.resize(n * n);
      t.counts.resize(n * n);
      for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
          int p = row * n + col;
          int k = 0;
          if (row > 0) t.points[p][k++] = static_cast<int16_t>(p - n);
          if (col > 0) t.points[p][k++] = static_cast<int16_t>(p - 1);
          if (col < n - 1) t.points[p][k++] = static_cast<int16_t>(p + 1);
          if (row < n - 1) t.points[p][k++] = static_cast<int16_t>(p + n);
          t.counts[p] = static_cast<uint8_t>(k);
        }
      }
    }
    return result;
  }();
  return tables[size];
}

uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct ZobristKeys {
  std::array<std::array<uint64_t, kMaxPoints>, 3> stones{};
  uint64_t white_to_play = 0;
};

const ZobristKeys& Zobrist() {
  static const ZobristKeys keys = [] {
    ZobristKeys k;
    uint64_t state = 0x6770676f5a6f6272ULL;
    for (int color = 1; color <= 2; ++color) {
      for (auto& key : k.stones[color]) key = SplitMix64(state);
    }
    k.white_to_play = SplitMix64(state);
    return k;
  }();
  return keys;
}

uint64_t StoneKey(Color c, int point) {
  return Zobrist().stones[static_cast<int>(c)][point];
}

}  // namespace

const char* ColorName(Color c) {
  switch (c) {
    case Color::kBlack:
      return "black";
    case Color::kWhite:
      return "white";
    case Color::kEmpty:
      break;
  }
  return "empty";
}

const char* LadderStatusName(LadderStatus s) {
  switch (s) {
    case LadderStatus::kCapturedInLadder:
      return "captured";
    case LadderStatus::kEscapesLadder:
      return "escapes";
    case LadderStatus::kNotInLadder:
      break;
  }
  return "none";
}

const char* IllegalReasonName(IllegalReason r) {
  switch (r) {
    case IllegalReason::kOffBoard:
      return "off board";
    case IllegalReason::kOccupied:
      return "occupied point";
    case IllegalReason::kSuicide:
      return "suicide";
    case IllegalReason::kSuperko:
      return "superko";
    case IllegalReason::kWrongColor:
      return "wrong color";
    case IllegalReason::kGameOver:
      return "game over";
  }
  return "illegal";
}

bool Board::IsSupportedSize(int size) {
  return size >= 3 && size <= kMaxBoardSize && size % 2 == 1;
}

Board::Board(int size, double komi) {
  if (!IsSupportedSize(size)) {
    throw std::invalid_argument("unsupported board size " +
                                std::to_string(size));
  }
  if (!std::isfinite(komi) || std::fmod(komi * 2.0, 1.0) != 0.0) {
    throw std::invalid_argument("komi must be a multiple of 0.5");
  }
  size_ = size;
  komi_ = komi;
  grid_.assign(size * size, Color::kEmpty);
  chain_next_.resize(size * size);
  chain_head_.resize(size * size);
  for (int p = 0; p < size * size; ++p) {
    chain_next_[p] = static_cast<int16_t>(p);
    chain_head_[p] = static_cast<int16_t>(p);
  }
  PushHistory(stone_hash_);
}

Board Board::FromGrid(int size, double komi, std::span<const Color> grid,
                      Color to_play,
                      const std::vector<std::vector<Color>>& predecessors) {
  Board b(size, komi);
  if (static_cast<int>(grid.size()) != size * size) {
    throw std::invalid_argument("grid does not match board size");
  }
  if (to_play == Color::kEmpty) {
    throw std::invalid_argument("side to move must be a color");
  }
  b.grid_.assign(grid.begin(), grid.end());
  b.to_play_ = to_play;
  b.RebuildChains();
  b.stone_hash_ = 0;
  for (int p = 0; p < b.num_points(); ++p) {
    if (b.grid_[p] != Color::kEmpty) {
      b.stone_hash_ ^= StoneKey(b.grid_[p], p);
      if (b.CountLiberties(b.chain_head_[p], 1) == 0) {
        throw std::invalid_argument("string without liberties at " +
                                    PointToGtp(p, size));
      }
    }
  }
  b.history_.reset();
  int n = std::min<int>(static_cast<int>(predecessors.size()), kHistoryDepth);
  for (int i = n - 1; i >= 0; --i) {
    if (static_cast<int>(predecessors[i].size()) != size * size) {
      throw std::invalid_argument("predecessor grid does not match size");
    }
    uint64_t h = 0;
    for (int p = 0; p < size * size; ++p) {
      if (predecessors[i][p] != Color::kEmpty) {
        h ^= StoneKey(predecessors[i][p], p);
      }
    }
    b.PushHistory(h);
    b.PushPredecessor(std::make_shared<const Grid>(predecessors[i]));
  }
  b.PushHistory(b.stone_hash_);
  return b;
}

Board Board::FromDiagram(std::string_view diagram, Color to_play,
                         double komi) {
  std::vector<Color> grid;
  for (char ch : diagram) {
    switch (ch) {
      case 'X':
      case 'x':
      case 'B':
        grid.push_back(Color::kBlack);
        break;
      case 'O':
      case 'o':
      case 'W':
        grid.push_back(Color::kWhite);
        break;
      case '.':
      case '+':
      case '-':
        grid.push_back(Color::kEmpty);
        break;
      case ' ':
      case '\t':
      case '\n':
      case '\r':
        break;
      default:
        throw std::invalid_argument(std::string("bad diagram character '") +
                                    ch + "'");
    }
  }
  int size = static_cast<int>(std::lround(std::sqrt(grid.size())));
  if (size * size != static_cast<int>(grid.size())) {
    throw std::invalid_argument("diagram is not square");
  }
  return FromGrid(size, komi, grid, to_play);
}

std::span<const Color> Board::predecessor(int i) const {
  if (i < 0 || i >= num_predecessors_) {
    throw std::out_of_range("predecessor index");
  }
  return *predecessors_[i];
}

uint64_t Board::hash() const {
  return stone_hash_ ^
         (to_play_ == Color::kWhite ? Zobrist().white_to_play : 0);
}

bool Board::SeenPosition(uint64_t h) const {
  for (const HashNode* node = history_.get(); node != nullptr;
       node = node->prev.get()) {
    if (node->hash == h) return true;
  }
  return false;
}

int Board::stone_count(Color color) const {
  int n = 0;
  for (Color c : grid_) n += (c == color);
  return n;
}

std::span<const int16_t> Board::Neighbors(int point) const {
  const auto& t = NeighborsFor(size_);
  return {t.points[point].data(), t.counts[point]};
}

void Board::RebuildChains() {
  for (int p = 0; p < num_points(); ++p) {
    chain_next_[p] = static_cast<int16_t>(p);
    chain_head_[p] = static_cast<int16_t>(p);
  }
  for (int p = 0; p < num_points(); ++p) {
    if (grid_[p] == Color::kEmpty) continue;
    for (int n : Neighbors(p)) {
      if (grid_[n] == grid_[p] && chain_head_[n] != chain_head_[p]) {
        MergeChains(chain_head_[p], chain_head_[n]);
      }
    }
  }
}

void Board::PushHistory(uint64_t h) {
  history_ = std::make_shared<const HashNode>(HashNode{h, history_});
}

void Board::PushPredecessor(std::shared_ptr<const Grid> grid) {
  for (int i = kHistoryDepth - 1; i > 0; --i) {
    predecessors_[i] = std::move(predecessors_[i - 1]);
  }
  predecessors_[0] = std::move(grid);
  num_predecessors_ = std::min(num_predecessors_ + 1, kHistoryDepth);
}

int Board::CountLiberties(int head, int stop_after) const {
  std::bitset<kMaxPoints> seen;
  int libs = 0;
  int p = head;
  do {
    for (int n : Neighbors(p)) {
      if (grid_[n] == Color::kEmpty && !seen[n]) {
        seen[n] = true;
        if (++libs >= stop_after) return libs;
      }
    }
    p = chain_next_[p];
  } while (p != head);
  return libs;
}

void Board::MergeChains(int a, int b) {
  // Relabel b's stones to head a, then splice the two circular lists.
  int p = b;
  do {
    chain_head_[p] = static_cast<int16_t>(a);
    p = chain_next_[p];
  } while (p != b);
  std::swap(chain_next_[a], chain_next_[b]);
}

int Board::RemoveChain(int head) {
  int removed = 0;
  int p = head;
  do {
    int next = chain_next_[p];
    stone_hash_ ^= StoneKey(grid_[p], p);
    grid_[p] = Color::kEmpty;
    chain_next_[p] = static_cast<int16_t>(p);
    chain_head_[p] = static_cast<int16_t>(p);
    ++removed;
    p = next;
  } while (p != head);
  return removed;
}

std::optional<IllegalReason> Board::CheckMove(const Move& m) const {
  if (is_terminal()) return IllegalReason::kGameOver;
  if (m.color != to_play_) return IllegalReason::kWrongColor;
  if (m.is_pass()) return std::nullopt;
  if (m.point < 0 || m.point >= num_points()) return IllegalReason::kOffBoard;
  if (grid_[m.point] != Color::kEmpty) return IllegalReason::kOccupied;

  const Color us = m.color;
  const Color them = Opponent(us);
  uint64_t next_hash = stone_hash_ ^ StoneKey(us, m.point);
  bool has_liberty = false;
  bool captures = false;
  std::array<int, 4> captured_heads{};
  int num_captured = 0;
  for (int n : Neighbors(m.point)) {
    Color c = grid_[n];
    if (c == Color::kEmpty) {
      has_liberty = true;
    } else if (c == us) {
      // A friendly string with another liberty keeps the new stone alive.
      if (!has_liberty && CountLiberties(chain_head_[n], 2) >= 2) {
        has_liberty = true;
      }
    } else if (c == them) {
      int head = chain_head_[n];
      bool already = false;
      for (int i = 0; i < num_captured; ++i) already |= captured_heads[i] == head;
      if (!already && CountLiberties(head, 2) == 1) {
        captured_heads[num_captured++] = head;
        captures = true;
        int p = head;
        do {
          next_hash ^= StoneKey(them, p);
          p = chain_next_[p];
        } while (p != head);
      }
    }
  }
  if (!has_liberty && !captures) return IllegalReason::kSuicide;
  if (SeenPosition(next_hash)) return IllegalReason::kSuperko;
  return std::nullopt;
}

Board Board::Play(const Move& m) const {
  if (auto reason = CheckMove(m)) {
    std::string where = m.is_pass() ? "pass" : PointToGtp(m.point, size_);
    throw IllegalMoveError(*reason, std::string("illegal move ") +
                                        ColorName(m.color) + " " + where +
                                        ": " + IllegalReasonName(*reason));
  }
  Board next = *this;
  next.PushPredecessor(std::make_shared<const Grid>(grid_));
  next.to_play_ = Opponent(to_play_);
  ++next.move_number_;
  if (m.is_pass()) {
    ++next.consecutive_passes_;
    return next;
  }
  next.consecutive_passes_ = 0;

  const Color us = m.color;
  const Color them = Opponent(us);
  next.grid_[m.point] = us;
  next.stone_hash_ ^= StoneKey(us, m.point);
  for (int n : next.Neighbors(m.point)) {
    if (next.grid_[n] == us && next.chain_head_[n] != next.chain_head_[m.point]) {
      next.MergeChains(next.chain_head_[n], next.chain_head_[m.point]);
    }
  }
  for (int n : next.Neighbors(m.point)) {
    if (next.grid_[n] == them &&
        next.CountLiberties(next.chain_head_[n], 1) == 0) {
      int removed = next.RemoveChain(next.chain_head_[n]);
      (them == Color::kBlack ? next.black_captured_ : next.white_captured_) +=
          removed;
    }
  }
  next.PushHistory(next.stone_hash_);
  return next;
}

std::vector<Move> Board::LegalMoves() const {
  std::vector<Move> moves;
  if (is_terminal()) return moves;
  for (int p = 0; p < num_points(); ++p) {
    if (grid_[p] != Color::kEmpty) continue;
    Move m = Move::Play(to_play_, p);
    if (IsLegal(m)) moves.push_back(m);
  }
  moves.push_back(Move::Pass(to_play_));
  return moves;
}

int Board::Liberties(int point) const {
  if (point < 0 || point >= num_points() || grid_[point] == Color::kEmpty) {
    throw std::invalid_argument("liberties of an empty point");
  }
  return CountLiberties(chain_head_[point], kMaxPoints);
}

std::vector<int> Board::StringStones(int point) const {
  std::vector<int> stones;
  if (grid_[point] == Color::kEmpty) return stones;
  int head = chain_head_[point];
  int p = head;
  do {
    stones.push_back(p);
    p = chain_next_[p];
  } while (p != head);
  std::sort(stones.begin(), stones.end());
  return stones;
}

std::vector<int> Board::StringLiberties(int point) const {
  std::vector<int> libs;
  if (grid_[point] == Color::kEmpty) return libs;
  std::bitset<kMaxPoints> seen;
  int head = chain_head_[point];
  int p = head;
  do {
    for (int n : Neighbors(p)) {
      if (grid_[n] == Color::kEmpty && !seen[n]) {
        seen[n] = true;
        libs.push_back(n);
      }
    }
    p = chain_next_[p];
  } while (p != head);
  std::sort(libs.begin(), libs.end());
  return libs;
}

Board Board::WithToPlay(Color color) const {
  if (color == Color::kEmpty) {
    throw std::invalid_argument("side to move must be a color");
  }
  Board b = *this;
  b.to_play_ = color;
  b.consecutive_passes_ = 0;
  return b;
}

Board Board::WithKomi(double komi) const {
  Board b(size_, komi);
  Board copy = *this;
  copy.komi_ = b.komi_;
  return copy;
}

Board Board::WithSetupStones(std::span<const Move> stones) const {
  Grid grid = grid_;
  for (const Move& s : stones) {
    if (s.is_pass() || s.point < 0 || s.point >= num_points()) {
      throw std::invalid_argument("setup stone off board");
    }
    if (grid[s.point] != Color::kEmpty) {
      throw std::invalid_argument("setup stone on occupied point " +
                                  PointToGtp(s.point, size_));
    }
    grid[s.point] = s.color;
  }
  Board b = FromGrid(size_, komi_, grid, to_play_);
  b.move_number_ = move_number_;
  return b;
}

double Board::AreaScore() const {
  int black = 0;
  int white = 0;
  std::bitset<kMaxPoints> visited;
  std::vector<int> stack;
  for (int p = 0; p < num_points(); ++p) {
    if (grid_[p] == Color::kBlack) {
      ++black;
    } else if (grid_[p] == Color::kWhite) {
      ++white;
    } else if (!visited[p]) {
      int region = 0;
      bool borders_black = false;
      bool borders_white = false;
      stack.assign(1, p);
      visited[p] = true;
      while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        ++region;
        for (int n : Neighbors(q)) {
          if (grid_[n] == Color::kEmpty) {
            if (!visited[n]) {
              visited[n] = true;
              stack.push_back(n);
            }
          } else if (grid_[n] == Color::kBlack) {
            borders_black = true;
          } else {
            borders_white = true;
          }
        }
      }
      if (borders_black && !borders_white) black += region;
      if (borders_white && !borders_black) white += region;
    }
  }
  return black - white - komi_;
}

std::string Board::ToString() const {
  std::ostringstream oss;
  oss << "   ";
  for (int col = 0; col < size_; ++col) oss << kGtpColumns[col] << ' ';
  oss << '\n';
  for (int row = 0; row < size_; ++row) {
    int label = size_ - row;
    oss << (label < 10 ? " " : "") << label << ' ';
    for (int col = 0; col < size_; ++col) {
      Color c = at(row, col);
      oss << (c == Color::kBlack ? 'X' : c == Color::kWhite ? 'O' : '.')
          << ' ';
    }
    oss << label << '\n';
  }
  oss << "   ";
  for (int col = 0; col < size_; ++col) oss << kGtpColumns[col] << ' ';
  oss << '\n';
  return oss.str();
}

double Score(const Board& b) {
  if (!b.is_terminal()) {
    throw std::logic_error("scoring a game that is not over");
  }
  return b.AreaScore();
}

Color Winner(const Board& b) {
  double s = b.AreaScore();
  if (s > 0) return Color::kBlack;
  if (s < 0) return Color::kWhite;
  return Color::kEmpty;
}

}  // namespace gpgo
