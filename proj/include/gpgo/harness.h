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

#ifndef GPGO_HARNESS_H_
#define GPGO_HARNESS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gpgo/board.h"
#include "gpgo/encoding.h"
#include "gpgo/search.h"
#include "gpgo/sgf.h"

namespace gpgo {

enum class PlayerKind { kPolicyOnly, kSearch };

struct PlayerSpec {
  std::string name;
  PlayerKind kind = PlayerKind::kSearch;
  // Weight file; empty means no network. Ignored when `evaluator` is set.
  std::string weights;
  // "uniform" or "score"; used when there are no weights.
  std::string prior = "uniform";
  BanditConfig bandit;
  SearchBudget budget = SearchBudget::Descents(32);
  // Resolved by Resolve(); callers may also set it directly.
  std::shared_ptr<const Evaluator> evaluator;
};

// Loads the weight file or builds the prior evaluator. Throws
// std::runtime_error for a missing file and std::invalid_argument when the
// network was built for another board size.
void Resolve(PlayerSpec& spec, int board_size);

// Reads a JSON array of player objects:
//   {"name": "...", "kind": "search"|"policy", "weights": "path",
//    "prior": "uniform"|"score", "bandit": "puct"|"gpuct", "c": 0.1,
//    "tau": 0.5, "budget": "descents:32"}
// Missing budgets take `default_budget`.
std::vector<PlayerSpec> LoadPlayers(const std::string& path,
                                    const SearchBudget& default_budget);

struct GameConfig {
  int board_size = 9;
  double komi = 7.5;
  // Uniformly random legal non-pass plies before the players take over.
  int opening_plies = 4;
  // Total plies, opening included; 0 means 2 * size^2.
  int move_cap = 0;
};

struct GameOutcome {
  Color winner = Color::kEmpty;  // kEmpty is a draw
  double score = 0;              // area score, Black positive
  bool a_was_black = true;
  bool capped = false;
  GameRecord record;
};

// Player a is Black on even seeds. The opening is drawn from seed / 2, so
// seeds 2k and 2k+1 start from the same position with colours swapped.
GameOutcome PlayGame(const PlayerSpec& a, const PlayerSpec& b,
                     const GameConfig& config, uint64_t seed);

// The move a player picks at `board`.
Move ChooseMove(const PlayerSpec& player, const Board& board);

struct MatchResult {
  int64_t games = 0;
  // Draws count one half.
  double wins_a = 0;
  int64_t a_as_black = 0;
  int64_t capped = 0;
  double winrate() const { return games > 0 ? wins_a / games : 0.0; }
  // sqrt(winrate * (1 - winrate) / n)
  double standard_error() const;
};

struct MatchConfig {
  GameConfig game;
  uint64_t seed = 1;
  int concurrency = 1;
  // Called once per finished game with its index; may be empty.
  std::function<void(int64_t, const GameOutcome&)> on_game;
};

// Game i uses seed 2 * config.seed + i, so consecutive games share an
// opening with colours swapped. Throws std::invalid_argument unless n_games
// is even and at least 2.
MatchResult RunMatch(const PlayerSpec& a, const PlayerSpec& b, int64_t n_games,
                     const MatchConfig& config);

struct ResultRow {
  std::string name;
  int64_t games = 0;
  double wins = 0;
  double winrate = 0;
  double standard_error = 0;
};

struct ResultTable {
  // Sorted by winrate, best first.
  std::vector<ResultRow> rows;
  // pair_winrate[i][j]: winrate of players[i] against players[j].
  std::vector<std::string> players;
  std::vector<std::vector<double>> pair_winrate;

  // Columns name, winrate, stderr, both in percent.
  std::string ToCsv() const;
};

// Every unordered pair plays games_per_pair games. Throws on fewer than two
// players or duplicate names.
ResultTable RoundRobin(const std::vector<PlayerSpec>& players,
                       int64_t games_per_pair, const MatchConfig& config);

struct SelfPlayConfig {
  GameConfig game;
  BanditConfig bandit;
  SearchBudget budget = SearchBudget::Descents(64);
  double root_noise_fraction = 0.0;
  double root_noise_alpha = 0.03;
  // Moves sampled in proportion to visit counts for this many plies after
  // the opening; greedy afterwards.
  int temperature_plies = 0;
};

struct SelfPlayData {
  std::vector<GameRecord> games;
  std::vector<TrainingExample> examples;
  // Games that ended in a draw produce no examples.
  int64_t draws = 0;
};

// Plays n_games with the evaluator on both sides. Examples cover every
// position where a move was chosen by search, labelled with the final
// winner.
SelfPlayData SelfPlay(const Evaluator& evaluator, const SelfPlayConfig& cfg,
                      int n_games, uint64_t seed);

// Dataset dump, all integers little-endian:
//   "GPDS", u32 version, u32 board_size, u32 planes, u64 plane_order_hash,
//   u64 count, then per example: ceil(planes * size^2 / 8) bytes of packed
//   plane bits (plane-major, least significant bit first), u16 policy_label,
//   u8 value_label.
constexpr char kDatasetMagic[4] = {'G', 'P', 'D', 'S'};
constexpr uint32_t kDatasetVersion = 1;

std::string SaveDataset(const std::vector<TrainingExample>& examples,
                        int board_size);
// Throws std::runtime_error on a malformed or foreign file.
std::vector<TrainingExample> LoadDataset(std::string_view bytes);

}  // namespace gpgo

#endif  // GPGO_HARNESS_H_
