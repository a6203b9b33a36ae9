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

#include "gpgo/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "gpgo/csv.h"
#include "json.hpp"

namespace gpgo {

namespace {

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t Below(std::mt19937_64& rng, uint64_t n) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

Board PlayOpening(Board board, int plies, std::mt19937_64& rng,
                  std::vector<Move>& moves) {
  for (int i = 0; i < plies && !board.is_terminal(); ++i) {
    std::vector<Move> legal = board.LegalMoves();
    std::erase_if(legal, [](const Move& m) { return m.is_pass(); });
    if (legal.empty()) break;
    Move m = legal[Below(rng, legal.size())];
    moves.push_back(m);
    board = board.Play(m);
  }
  return board;
}

std::string ResultText(double score) {
  if (score == 0) return "0";
  std::ostringstream ss;
  ss << (score > 0 ? "B+" : "W+") << std::abs(score);
  return ss.str();
}

GameRecord MakeRecord(const GameConfig& config, const std::vector<Move>& moves,
                      double score) {
  GameRecord r;
  r.board_size = config.board_size;
  r.komi = config.komi;
  r.moves = moves;
  r.move_comments.assign(moves.size(), "");
  r.result = score > 0   ? GameResult::kBlackWin
             : score < 0 ? GameResult::kWhiteWin
                         : GameResult::kDraw;
  r.metadata["RE"] = ResultText(score);
  r.metadata["RU"] = "Tromp-Taylor";
  return r;
}

int MoveCap(const GameConfig& config) {
  return config.move_cap > 0 ? config.move_cap
                             : 2 * config.board_size * config.board_size;
}

}  // namespace

void Resolve(PlayerSpec& spec, int board_size) {
  if (spec.evaluator) return;
  if (!spec.weights.empty()) {
    auto net = std::make_shared<const Network>(
        LoadWeightsFromFile(spec.weights));
    if (net->descriptor().board_size != board_size) {
      throw std::invalid_argument(
          "descriptor mismatch: " + spec.weights + " is for " +
          std::to_string(net->descriptor().board_size) + "x" +
          std::to_string(net->descriptor().board_size) + " boards");
    }
    spec.evaluator = std::make_shared<NetworkEvaluator>(std::move(net));
  } else if (spec.prior == "uniform") {
    spec.evaluator = std::make_shared<UniformEvaluator>();
  } else if (spec.prior == "score") {
    spec.evaluator = std::make_shared<ScoreEvaluator>();
  } else {
    throw std::invalid_argument("unknown prior '" + spec.prior + "'");
  }
}

std::vector<PlayerSpec> LoadPlayers(const std::string& path,
                                    const SearchBudget& default_budget) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open players file " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (!j.is_array()) throw std::invalid_argument("players file must be a list");
  std::vector<PlayerSpec> out;
  for (const auto& p : j) {
    PlayerSpec s;
    s.name = p.at("name").get<std::string>();
    std::string kind = p.value("kind", "search");
    if (kind == "policy") {
      s.kind = PlayerKind::kPolicyOnly;
    } else if (kind != "search") {
      throw std::invalid_argument("unknown player kind '" + kind + "'");
    }
    s.weights = p.value("weights", "");
    s.prior = p.value("prior", "uniform");
    std::string bandit = p.value("bandit", "gpuct");
    double c = p.value("c", 0.1);
    if (bandit == "puct") {
      s.bandit = BanditConfig::Puct(c);
    } else if (bandit == "gpuct") {
      s.bandit = BanditConfig::Gpuct(c, p.value("tau", 0.5));
    } else {
      throw std::invalid_argument("unknown bandit '" + bandit + "'");
    }
    s.bandit.fpu = p.value("fpu", 0.0);
    s.bandit.Validate();
    s.budget = p.contains("budget")
                   ? SearchBudget::Parse(p["budget"].get<std::string>())
                   : default_budget;
    out.push_back(std::move(s));
  }
  return out;
}

Move ChooseMove(const PlayerSpec& player, const Board& board) {
  if (!player.evaluator) {
    throw std::invalid_argument("player " + player.name + " is not resolved");
  }
  if (player.kind == PlayerKind::kSearch) {
    Search search(*player.evaluator, player.bandit);
    return search.Run(board, player.budget).move;
  }
  NetOutput out = player.evaluator->Evaluate(board);
  std::vector<Move> legal = board.LegalMoves();
  Move best = legal.front();
  float best_logit = -INFINITY;
  for (const Move& m : legal) {
    float logit = out.policy_logits[PolicyIndex(m, board.size())];
    if (logit > best_logit) {
      best_logit = logit;
      best = m;
    }
  }
  return best;
}

GameOutcome PlayGame(const PlayerSpec& a_in, const PlayerSpec& b_in,
                     const GameConfig& config, uint64_t seed) {
  PlayerSpec a = a_in;
  PlayerSpec b = b_in;
  Resolve(a, config.board_size);
  Resolve(b, config.board_size);

  GameOutcome out;
  out.a_was_black = seed % 2 == 0;
  std::mt19937_64 rng(SplitMix(seed / 2));
  std::vector<Move> moves;
  Board board = PlayOpening(Board(config.board_size, config.komi),
                            config.opening_plies, rng, moves);
  const int cap = MoveCap(config);
  while (!board.is_terminal() && static_cast<int>(moves.size()) < cap) {
    bool a_to_play = (board.to_play() == Color::kBlack) == out.a_was_black;
    Move m = ChooseMove(a_to_play ? a : b, board);
    moves.push_back(m);
    board = board.Play(m);
  }
  out.capped = !board.is_terminal();
  out.score = board.AreaScore();
  out.winner = Winner(board);
  out.record = MakeRecord(config, moves, out.score);
  out.record.metadata["PB"] = out.a_was_black ? a.name : b.name;
  out.record.metadata["PW"] = out.a_was_black ? b.name : a.name;
  return out;
}

double MatchResult::standard_error() const {
  if (games == 0) return 0.0;
  double p = winrate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(games));
}

MatchResult RunMatch(const PlayerSpec& a_in, const PlayerSpec& b_in,
                     int64_t n_games, const MatchConfig& config) {
  if (n_games < 2 || n_games % 2 != 0) {
    throw std::invalid_argument("a match needs an even number of games >= 2");
  }
  PlayerSpec a = a_in;
  PlayerSpec b = b_in;
  Resolve(a, config.game.board_size);
  Resolve(b, config.game.board_size);

  std::vector<GameOutcome> outcomes(static_cast<size_t>(n_games));
  std::atomic<int64_t> next{0};
  std::mutex mu;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      int64_t i = next.fetch_add(1);
      if (i >= n_games) return;
      try {
        outcomes[i] = PlayGame(a, b, config.game, 2 * config.seed + i);
        if (config.on_game) {
          std::lock_guard<std::mutex> lock(mu);
          config.on_game(i, outcomes[i]);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        next = n_games;
      }
    }
  };
  int threads = std::clamp<int>(config.concurrency, 1,
                                static_cast<int>(n_games));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  MatchResult r;
  for (const auto& o : outcomes) {
    ++r.games;
    Color a_color = o.a_was_black ? Color::kBlack : Color::kWhite;
    if (o.winner == a_color) {
      r.wins_a += 1.0;
    } else if (o.winner == Color::kEmpty) {
      r.wins_a += 0.5;
    }
    r.a_as_black += o.a_was_black ? 1 : 0;
    r.capped += o.capped ? 1 : 0;
  }
  return r;
}

ResultTable RoundRobin(const std::vector<PlayerSpec>& players_in,
                       int64_t games_per_pair, const MatchConfig& config) {
  if (players_in.size() < 2) {
    throw std::invalid_argument("a round robin needs at least two players");
  }
  std::set<std::string> names;
  for (const auto& p : players_in) {
    if (!names.insert(p.name).second) {
      throw std::invalid_argument("duplicate player name " + p.name);
    }
  }
  std::vector<PlayerSpec> players = players_in;
  for (auto& p : players) Resolve(p, config.game.board_size);

  const size_t n = players.size();
  ResultTable table;
  table.pair_winrate.assign(n, std::vector<double>(n, 0.5));
  std::vector<double> wins(n, 0.0);
  std::vector<int64_t> games(n, 0);
  uint64_t pair_index = 0;
  for (size_t i = 0; i < n; ++i) {
    table.players.push_back(players[i].name);
    for (size_t j = i + 1; j < n; ++j) {
      MatchConfig mc = config;
      mc.seed = config.seed + pair_index++ * static_cast<uint64_t>(games_per_pair / 2);
      MatchResult r = RunMatch(players[i], players[j], games_per_pair, mc);
      wins[i] += r.wins_a;
      wins[j] += static_cast<double>(r.games) - r.wins_a;
      games[i] += r.games;
      games[j] += r.games;
      table.pair_winrate[i][j] = r.winrate();
      table.pair_winrate[j][i] = 1.0 - r.winrate();
    }
  }
  for (size_t i = 0; i < n; ++i) {
    ResultRow row;
    row.name = players[i].name;
    row.games = games[i];
    row.wins = wins[i];
    row.winrate = wins[i] / static_cast<double>(games[i]);
    row.standard_error =
        std::sqrt(row.winrate * (1 - row.winrate) / static_cast<double>(games[i]));
    table.rows.push_back(row);
  }
  std::ranges::stable_sort(table.rows, [](const ResultRow& x, const ResultRow& y) {
    return x.winrate > y.winrate;
  });
  return table;
}

std::string ResultTable::ToCsv() const {
  CsvTable csv;
  csv.header = {"name", "winrate", "stderr"};
  for (const auto& r : rows) {
    csv.rows.push_back({r.name, FormatNumber(100.0 * r.winrate, 4),
                        FormatNumber(100.0 * r.standard_error, 3)});
  }
  std::ostringstream ss;
  WriteCsv(ss, csv);
  return ss.str();
}

SelfPlayData SelfPlay(const Evaluator& evaluator, const SelfPlayConfig& cfg,
                      int n_games, uint64_t seed) {
  SelfPlayData data;
  SearchOptions options;
  options.root_noise_fraction = cfg.root_noise_fraction;
  options.root_noise_alpha = cfg.root_noise_alpha;
  for (int g = 0; g < n_games; ++g) {
    std::mt19937_64 rng(SplitMix(seed + static_cast<uint64_t>(g)));
    std::vector<Move> moves;
    Board board = PlayOpening(Board(cfg.game.board_size, cfg.game.komi),
                              cfg.game.opening_plies, rng, moves);
    std::vector<std::pair<Board, Move>> positions;
    const int cap = MoveCap(cfg.game);
    int searched = 0;
    while (!board.is_terminal() && static_cast<int>(moves.size()) < cap) {
      Search search(evaluator, cfg.bandit, options);
      SearchResult r = search.Run(board, cfg.budget, &rng);
      Move m = r.move;
      if (searched < cfg.temperature_plies) {
        int64_t total = 0;
        for (const auto& e : r.root_edges) total += e.visits;
        if (total > 0) {
          int64_t pick = static_cast<int64_t>(Below(rng, total));
          for (const auto& e : r.root_edges) {
            if (pick < e.visits) {
              m = e.move;
              break;
            }
            pick -= e.visits;
          }
        }
      }
      ++searched;
      positions.emplace_back(board, m);
      moves.push_back(m);
      board = board.Play(m);
    }
    double score = board.AreaScore();
    Color winner = Winner(board);
    data.games.push_back(MakeRecord(cfg.game, moves, score));
    if (winner == Color::kEmpty) {
      ++data.draws;
      continue;
    }
    for (const auto& [b, m] : positions) {
      data.examples.push_back(MakeExample(b, m, winner));
    }
  }
  return data;
}

}  // namespace gpgo
