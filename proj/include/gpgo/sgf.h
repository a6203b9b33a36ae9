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

#ifndef GPGO_SGF_H_
#define GPGO_SGF_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gpgo/board.h"

namespace gpgo {

class SgfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GameResult { kUnknown, kBlackWin, kWhiteWin, kDraw };

GameResult ParseResult(std::string_view re);

struct GameRecord {
  int board_size = 19;
  double komi = 7.5;
  GameResult result = GameResult::kUnknown;
  // Setup stones from AB/AW on the root node.
  std::vector<int> black_setup;
  std::vector<int> white_setup;
  // PL on the root; kEmpty when absent.
  Color first_player = Color::kEmpty;
  std::vector<Move> moves;
  // Comment (C) attached to each move node; empty when there was none.
  std::vector<std::string> move_comments;
  // Every other root property, first value only. RE is kept here verbatim.
  std::map<std::string, std::string> metadata;

  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

// Main line of the first game tree in `text`. Variations are skipped.
// Throws SgfError for malformed trees, unsupported sizes and coordinates
// off the board.
GameRecord ParseSgf(std::string_view text);
// Every game tree in a collection.
std::vector<GameRecord> ParseSgfCollection(std::string_view text);

std::string EmitSgf(const GameRecord& g);

// Replays the record under our rules. Returns the final position, or nullopt
// if any move is illegal (superko, suicide, occupied).
std::optional<Board> Replay(const GameRecord& g);

struct FilterSummary {
  int64_t seen = 0;
  int64_t wrong_size = 0;
  int64_t komi_out_of_range = 0;
  int64_t matched = 0;
  int64_t kept = 0;  // after take_last
};

// Keeps games of `size` with komi in [min_komi, max_komi], then the last
// `take_last` of them in input order.
std::vector<GameRecord> FilterKatago(const std::vector<GameRecord>& games,
                                     double min_komi, double max_komi,
                                     int size, int64_t take_last,
                                     FilterSummary* summary = nullptr);

struct ValidationState {
  size_t game;
  // The position before moves[move_index] is played.
  int move_index;
};

struct DatasetSplit {
  std::vector<size_t> training;
  std::vector<ValidationState> validation;
};

// Chooses `validation_count` games uniformly without replacement and one
// uniformly random state in each; the rest form the training pool in
// input order. Deterministic in `seed`. Throws std::invalid_argument if
// validation_count exceeds the number of games or a chosen game has no
// moves.
DatasetSplit MakeSplit(const std::vector<GameRecord>& games,
                       size_t validation_count, uint64_t seed);

struct IngestOptions {
  double min_komi = 5.5;
  double max_komi = 7.5;
  int board_size = 19;
  int64_t take_last = 1000000;
  size_t validation_count = 100000;
  uint64_t seed = 1;
};

struct IngestReport {
  int64_t files = 0;
  int64_t unreadable_files = 0;
  int64_t parse_errors = 0;
  FilterSummary filter;
  int64_t replay_rejected = 0;
  std::vector<GameRecord> games;
  DatasetSplit split;

  // Counts only, as JSON text.
  std::string SummaryJson() const;
};

// Reads a manifest of SGF paths (one per line, blank lines and '#' comments
// ignored), orders the files lexicographically, parses, filters, drops games
// that do not replay under our rules and splits the survivors.
// validation_count is clamped to the number of surviving games.
IngestReport IngestManifest(const std::string& manifest_path,
                            const IngestOptions& options);

}  // namespace gpgo

#endif  // GPGO_SGF_H_
