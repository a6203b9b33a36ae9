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

#ifndef GPGO_BOARD_H_
#define GPGO_BOARD_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gpgo {

enum class Color : uint8_t { kEmpty = 0, kBlack = 1, kWhite = 2 };

constexpr Color Opponent(Color c) {
  return c == Color::kBlack   ? Color::kWhite
         : c == Color::kWhite ? Color::kBlack
                              : Color::kEmpty;
}

const char* ColorName(Color c);

constexpr int kMaxBoardSize = 19;
constexpr int kMaxPoints = kMaxBoardSize * kMaxBoardSize;
constexpr int kPass = -1;

// A move is either a stone placement at a row-major point index or a pass.
struct Move {
  Color color = Color::kBlack;
  int point = kPass;

  static Move Play(Color color, int point) { return Move{color, point}; }
  static Move Pass(Color color) { return Move{color, kPass}; }

  bool is_pass() const { return point == kPass; }
  friend bool operator==(const Move&, const Move&) = default;
};

// Ordered by severity: adjacent_ladder_status picks the maximum.
enum class LadderStatus : uint8_t {
  kNotInLadder = 0,
  kEscapesLadder = 1,
  kCapturedInLadder = 2,
};

const char* LadderStatusName(LadderStatus s);

enum class IllegalReason {
  kOffBoard,
  kOccupied,
  kSuicide,
  kSuperko,
  kWrongColor,
  kGameOver,
};

const char* IllegalReasonName(IllegalReason r);

class IllegalMoveError : public std::runtime_error {
 public:
  IllegalMoveError(IllegalReason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  IllegalReason reason() const { return reason_; }

 private:
  IllegalReason reason_;
};

// Immutable Go position under Tromp-Taylor rules: area scoring, positional
// superko, no suicide. Play() returns a new Board; nothing mutates in place,
// so a Board can be shared freely between threads.
class Board {
 public:
  static constexpr int kHistoryDepth = 5;

  // Throws std::invalid_argument for unsupported sizes or a komi that is not
  // a multiple of 0.5.
  Board(int size, double komi);

  static bool IsSupportedSize(int size);

  // Builds a position from stones directly (no move history). Strings with no
  // liberties are rejected. `predecessors` are earlier grids, most recent
  // first; at most kHistoryDepth are kept.
  static Board FromGrid(int size, double komi, std::span<const Color> grid,
                        Color to_play,
                        const std::vector<std::vector<Color>>& predecessors = {});

  // Diagram rows use 'X' for Black, 'O' for White and '.' for empty;
  // whitespace is ignored. The side length is inferred from the point count.
  static Board FromDiagram(std::string_view diagram, Color to_play,
                           double komi = 7.5);

  int size() const { return size_; }
  int num_points() const { return size_ * size_; }
  double komi() const { return komi_; }
  Color to_play() const { return to_play_; }
  int consecutive_passes() const { return consecutive_passes_; }
  bool is_terminal() const { return consecutive_passes_ >= 2; }
  int move_number() const { return move_number_; }

  Color at(int point) const { return grid_[point]; }
  Color at(int row, int col) const { return grid_[row * size_ + col]; }
  std::span<const Color> grid() const { return grid_; }

  int num_predecessors() const { return num_predecessors_; }
  // i = 0 is the position before the last move.
  std::span<const Color> predecessor(int i) const;

  // Zobrist hash of stones plus side to move.
  uint64_t hash() const;
  // Zobrist hash of stones only; the superko history is kept in these terms.
  uint64_t stone_hash() const { return stone_hash_; }
  bool SeenPosition(uint64_t stone_hash) const;

  // Stones of `color` removed from the board over the game so far.
  int captured_stones(Color color) const {
    return color == Color::kBlack ? black_captured_ : white_captured_;
  }
  int stone_count(Color color) const;

  std::optional<IllegalReason> CheckMove(const Move& m) const;
  bool IsLegal(const Move& m) const { return !CheckMove(m).has_value(); }
  // Throws IllegalMoveError.
  Board Play(const Move& m) const;
  Board PlayPass() const { return Play(Move::Pass(to_play_)); }

  // Legal placements in row-major order followed by Pass; empty once the game
  // is over.
  std::vector<Move> LegalMoves() const;

  // Throws std::invalid_argument when `point` is empty.
  int Liberties(int point) const;
  std::vector<int> StringStones(int point) const;
  std::vector<int> StringLiberties(int point) const;
  // Representative point of the string through `point` (stable within one
  // Board value).
  int StringId(int point) const { return chain_head_[point]; }

  std::span<const int16_t> Neighbors(int point) const;

  // Copy with the side to move replaced and the pass counter cleared. Used
  // for setup positions and hypothetical reading (ladders, GTP out-of-turn
  // play).
  Board WithToPlay(Color color) const;
  // Copy with a different komi. Throws like the constructor.
  Board WithKomi(double komi) const;

  // Copy with the given stones added without capture processing. Throws
  // std::invalid_argument if a point is occupied or a string would end up
  // with no liberties.
  Board WithSetupStones(std::span<const Move> stones) const;

  // Tromp-Taylor area score, Black minus White minus komi, on the board as
  // it stands.
  double AreaScore() const;

  std::string ToString() const;

  int PointAt(int row, int col) const { return row * size_ + col; }
  int RowOf(int point) const { return point / size_; }
  int ColOf(int point) const { return point % size_; }

 private:
  struct HashNode {
    uint64_t hash;
    std::shared_ptr<const HashNode> prev;
  };
  using Grid = std::vector<Color>;

  Board() = default;
  void RebuildChains();
  void PushHistory(uint64_t hash);
  void PushPredecessor(std::shared_ptr<const Grid> grid);
  int CountLiberties(int head, int stop_after) const;
  void MergeChains(int a, int b);
  int RemoveChain(int head);

  int size_ = 0;
  double komi_ = 0;
  Color to_play_ = Color::kBlack;
  int consecutive_passes_ = 0;
  int move_number_ = 0;
  int black_captured_ = 0;
  int white_captured_ = 0;
  uint64_t stone_hash_ = 0;

  Grid grid_;
  // Circular linked list per string plus the head every stone points to.
  std::vector<int16_t> chain_next_;
  std::vector<int16_t> chain_head_;

  std::array<std::shared_ptr<const Grid>, kHistoryDepth> predecessors_;
  int num_predecessors_ = 0;
  std::shared_ptr<const HashNode> history_;
};

// Tromp-Taylor result of a finished game. Throws std::logic_error when the
// board is not terminal.
double Score(const Board& b);

// Winner by area score; kEmpty for a draw.
Color Winner(const Board& b);

LadderStatus LadderStatusAt(const Board& b, int point);
LadderStatus AdjacentLadderStatus(const Board& b, int point);

// Maximum number of plies read in a ladder race before the defender is
// considered to have escaped.
constexpr int kLadderDepthLimit = 64;

}  // namespace gpgo

#endif  // GPGO_BOARD_H_
