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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gpgo/harness.h"
#include "gpgo/nn.h"

namespace gpgo {
namespace {

PlayerSpec Searcher(const std::string& name, BanditConfig cfg, int descents) {
  PlayerSpec p;
  p.name = name;
  p.bandit = cfg;
  p.budget = SearchBudget::Descents(descents);
  return p;
}

TEST(Harness, IdenticalPlayersSplitEvenly) {
  PlayerSpec a = Searcher("a", BanditConfig::Puct(0.1), 8);
  PlayerSpec b = Searcher("b", BanditConfig::Puct(0.1), 8);
  MatchConfig cfg;
  cfg.game.board_size = 7;
  MatchResult r = RunMatch(a, b, 8, cfg);
  EXPECT_EQ(r.games, 8);
  EXPECT_DOUBLE_EQ(r.winrate(), 0.5);
  EXPECT_EQ(r.a_as_black, 4);
  EXPECT_NEAR(r.standard_error(), std::sqrt(0.25 / 8), 1e-12);
  EXPECT_THROW(RunMatch(a, b, 3, cfg), std::invalid_argument);
}

TEST(Harness, ColourAlternationAndSharedOpenings) {
  PlayerSpec a = Searcher("a", BanditConfig::Puct(0.1), 4);
  PlayerSpec b = Searcher("b", BanditConfig::Puct(0.5), 4);
  GameConfig g;
  g.board_size = 7;
  GameOutcome even = PlayGame(a, b, g, 10), odd = PlayGame(a, b, g, 11);
  EXPECT_TRUE(even.a_was_black);
  EXPECT_FALSE(odd.a_was_black);
  for (int i = 0; i < g.opening_plies; ++i) {
    EXPECT_EQ(even.record.moves[i], odd.record.moves[i]);
  }
  EXPECT_LE(static_cast<int>(even.record.moves.size()), 2 * 7 * 7);
}

TEST(Harness, ConcurrencyDoesNotChangeResults) {
  PlayerSpec a = Searcher("a", BanditConfig::Puct(0.1), 6);
  PlayerSpec b = Searcher("b", BanditConfig::Gpuct(0.3, 0.7), 6);
  b.prior = "score";
  MatchConfig one, many;
  one.game.board_size = many.game.board_size = 7;
  many.concurrency = 3;
  EXPECT_DOUBLE_EQ(RunMatch(a, b, 6, one).wins_a, RunMatch(a, b, 6, many).wins_a);
}

TEST(Harness, RoundRobinTable) {
  std::vector<PlayerSpec> players = {
      Searcher("p1", BanditConfig::Puct(0.1), 4),
      Searcher("p2", BanditConfig::Puct(0.3), 4),
      Searcher("p3", BanditConfig::Gpuct(0.1, 0.7), 4)};
  MatchConfig cfg;
  cfg.game.board_size = 5;
  cfg.game.opening_plies = 2;
  ResultTable t = RoundRobin(players, 4, cfg);
  ASSERT_EQ(t.rows.size(), 3u);
  double total = 0;
  for (const auto& r : t.rows) {
    EXPECT_EQ(r.games, 8);
    total += r.wins;
  }
  EXPECT_DOUBLE_EQ(total, 12.0);
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      if (i != j) {
        EXPECT_DOUBLE_EQ(t.pair_winrate[i][j] + t.pair_winrate[j][i], 1.0);
      }
    }
  }
  EXPECT_EQ(t.ToCsv().substr(0, 20), "name,winrate,stderr\n");
  players.push_back(players[0]);
  EXPECT_THROW(RoundRobin(players, 2, cfg), std::invalid_argument);
}

TEST(Harness, LoadPlayersAndResolve) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "gpgo_players_test";
  fs::create_directories(dir);
  Network net = Network::Build(NetworkDescriptor::Parse("se.1.16", 9), 3);
  SaveWeightsToFile(net, (dir / "w.bin").string());
  std::ofstream(dir / "players.json")
      << R"([{"name": "net", "kind": "policy", "weights": ")"
      << (dir / "w.bin").string()
      << R"("}, {"name": "uct", "bandit": "gpuct", "c": 0.05, "tau": 0.7}])";
  auto players = LoadPlayers((dir / "players.json").string(), SearchBudget::Descents(5));
  ASSERT_EQ(players.size(), 2u);
  EXPECT_EQ(players[0].kind, PlayerKind::kPolicyOnly);
  EXPECT_EQ(players[1].bandit.kind, BanditKind::kGpuct);
  EXPECT_DOUBLE_EQ(players[1].bandit.tau, 0.7);
  EXPECT_EQ(players[1].budget.descents, 5);
  PlayerSpec p = players[0];
  Resolve(p, 9);
  EXPECT_NE(p.evaluator, nullptr);
  PlayerSpec q = players[0];
  EXPECT_THROW(Resolve(q, 13), std::invalid_argument);
  PlayerSpec missing;
  missing.weights = (dir / "nope.bin").string();
  EXPECT_THROW(Resolve(missing, 9), std::runtime_error);
  fs::remove_all(dir);
}

TEST(Dataset, SelfPlayRoundTrip) {
  SelfPlayConfig cfg;
  cfg.game.board_size = 5;
  cfg.game.komi = 0.5;
  cfg.budget = SearchBudget::Descents(8);
  cfg.temperature_plies = 4;
  UniformEvaluator eval;
  SelfPlayData data = SelfPlay(eval, cfg, 3, 42);
  ASSERT_EQ(data.games.size(), 3u);
  ASSERT_FALSE(data.examples.empty());
  std::string bytes = SaveDataset(data.examples, 5);
  EXPECT_EQ(bytes.substr(0, 4), "GPDS");
  auto back = LoadDataset(bytes);
  ASSERT_EQ(back.size(), data.examples.size());
  for (size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].input, data.examples[i].input);
    EXPECT_EQ(back[i].policy_label, data.examples[i].policy_label);
    EXPECT_EQ(back[i].value_label, data.examples[i].value_label);
  }
  const size_t per = (21 * 25 + 7) / 8 + 3;
  EXPECT_EQ(bytes.size(), 4 + 4 + 4 + 4 + 8 + 8 + per * back.size());
  EXPECT_THROW(LoadDataset(bytes.substr(0, bytes.size() - 1)), std::runtime_error);
  EXPECT_THROW(LoadDataset(bytes + "z"), std::runtime_error);
  EXPECT_THROW(LoadDataset("GPDX"), std::runtime_error);
  // Same seed, same games.
  EXPECT_EQ(SelfPlay(eval, cfg, 3, 42).games, data.games);
}

}  // namespace
}  // namespace gpgo
