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
#include <random>
#include <set>

#include "gpgo/search.h"
#include "oracles.h"

namespace gpgo {
namespace {

TEST(Bandit, GpuctAtHalfIsSqrtPuct) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 10000; ++i) {
    double c = 5 * u(rng), p = u(rng);
    int64_t n_s = 1 + rng() % 1000000, n_sa = rng() % n_s;
    double expect = c * p * std::sqrt(static_cast<double>(n_s)) / (1.0 + n_sa);
    double got = GpuctExplorationTerm(c, 0.5, p, n_s, n_sa);
    EXPECT_LE(std::abs(got - expect), 1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST(Bandit, TauExtremes) {
  EXPECT_DOUBLE_EQ(GpuctExplorationTerm(2, 0.0, 0.5, 100, 4), 2 * 0.5 / 5);
  EXPECT_NEAR(GpuctExplorationTerm(2, 1.0, 0.5, 100, 4), 2 * 0.5 * 100 / 5.0, 1e-12);
  EXPECT_EQ(GpuctExplorationTerm(2, 0.7, 0.5, 0, 0), 0.0);
  EXPECT_THROW(BanditConfig::Gpuct(0.1, 1.5).Validate(), std::invalid_argument);
  EXPECT_THROW(BanditConfig::Puct(-1).Validate(), std::invalid_argument);
}

TEST(SelectChild, TiesGoToLowestIndex) {
  BanditConfig cfg = BanditConfig::Puct(1.0);
  std::vector<double> priors = {0.25, 0.25, 0.25, 0.25};
  std::vector<int64_t> visits = {0, 0, 0, 0};
  std::vector<double> q = {0, 0, 0, 0};
  EXPECT_EQ(SelectChild(cfg, 1, priors, visits, q), 0);
  visits = {1, 0, 0, 0};
  q = {0.0, 0, 0, 0};
  EXPECT_EQ(SelectChild(cfg, 2, priors, visits, q), 1);
  EXPECT_THROW(SelectChild(cfg, 1, {}, {}, {}), std::invalid_argument);
}

TEST(SelectChild, MatchesDirectArgmax) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    BanditConfig cfg = BanditConfig::Gpuct(u(rng), u(rng));
    cfg.fpu = u(rng) * 0.5;
    int k = 2 + rng() % 10;
    std::vector<double> priors(k), q(k);
    std::vector<int64_t> visits(k);
    int64_t n_s = 1;
    for (int i = 0; i < k; ++i) {
      priors[i] = u(rng);
      visits[i] = rng() % 3 == 0 ? 0 : rng() % 50;
      q[i] = u(rng);
      n_s += visits[i];
    }
    int best = 0;
    double best_score = -1e300;
    for (int i = 0; i < k; ++i) {
      double qi = visits[i] == 0 ? cfg.fpu : q[i];
      double s = qi + cfg.c * priors[i] *
                          std::exp(cfg.tau * std::log(static_cast<double>(n_s))) /
                          (1.0 + visits[i]);
      if (s > best_score) {
        best_score = s;
        best = i;
      }
    }
    EXPECT_EQ(SelectChild(cfg, n_s, priors, visits, q), best);
  }
}

TEST(Search, VisitInvariants) {
  Board b(7, 7.5);
  UniformEvaluator eval;
  SearchOptions opts;
  opts.check_invariants = true;
  Search s(eval, BanditConfig::Gpuct(0.2, 0.6), opts);
  SearchResult r = s.Run(b, SearchBudget::Descents(300));
  EXPECT_EQ(r.descents, 300);
  int64_t sum = 0;
  for (const auto& e : r.root_edges) sum += e.visits;
  EXPECT_EQ(r.root_visits, sum + 1);
  // Every visit count is the sum over its children plus the expansion.
  for (const auto& node : s.nodes()) {
    if (!node.expanded) continue;
    int64_t child_sum = 0;
    for (int i = 0; i < node.num_edges; ++i) child_sum += s.edges()[node.first_edge + i].visits;
    EXPECT_EQ(node.visits, child_sum + 1);
  }
}

TEST(Search, TerminalRootRejected) {
  Board b = Board(5, 0.5).PlayPass().PlayPass();
  UniformEvaluator eval;
  Search s(eval, BanditConfig::Puct(0.1));
  EXPECT_THROW(s.Run(b, SearchBudget::Descents(10)), std::invalid_argument);
}

TEST(Search, Deterministic) {
  Board b(9, 7.5);
  ScoreEvaluator eval;
  Search a(eval, BanditConfig::Puct(0.3)), c(eval, BanditConfig::Puct(0.3));
  EXPECT_EQ(a.Run(b, SearchBudget::Descents(200)).move,
            c.Run(b, SearchBudget::Descents(200)).move);
}

TEST(Search, ValuePerspective) {
  EXPECT_DOUBLE_EQ(ValuePerspective(0.8, Color::kWhite), 0.8);
  EXPECT_DOUBLE_EQ(ValuePerspective(0.8, Color::kBlack), 1 - 0.8);
}

// True if the side to move wins with best play, searching at most `depth`
// plies and scoring the board as it stands at the horizon.
bool MoverWins(const oracle::Pos& pos, int to_play, int passes, double komi,
               std::set<std::vector<int>>& seen, int depth) {
  auto mover_wins_now = [&](const oracle::Pos& p) {
    double s = oracle::AreaScore(p, komi);
    return to_play == 1 ? s > 0 : s < 0;
  };
  if (passes >= 2 || depth == 0) return mover_wins_now(pos);
  // Passing.
  if (!MoverWins(pos, 3 - to_play, passes + 1, komi, seen, depth - 1)) return true;
  for (int p = 0; p < pos.n * pos.n; ++p) {
    auto next = oracle::PlayRaw(pos, p, to_play);
    if (!next || seen.count(next->g)) continue;
    seen.insert(next->g);
    bool opp = MoverWins(*next, 3 - to_play, 0, komi, seen, depth - 1);
    seen.erase(next->g);
    if (!opp) return true;
  }
  return false;
}

TEST(Search, EndgameAgreesWithMinimax) {
  // Black leads; White has just passed. Black passing wins on the spot,
  // filling either black eye lets White capture everything.
  Board setup = Board::FromDiagram(
      ". X X O ."
      "X X X O O"
      "X . X O ."
      "X X X O O"
      "X X X O .",
      Color::kWhite, 0.5);
  Board root = setup.PlayPass();
  ASSERT_EQ(root.to_play(), Color::kBlack);
  ASSERT_EQ(root.consecutive_passes(), 1);

  oracle::Pos pos = oracle::FromBoard(root);
  std::set<std::vector<int>> seen = {pos.g};
  std::vector<Move> wins;
  for (const Move& m : root.LegalMoves()) {
    bool black_wins;
    if (m.is_pass()) {
      black_wins = oracle::AreaScore(pos, 0.5) > 0;
    } else {
      auto next = oracle::PlayRaw(pos, m.point, 1);
      ASSERT_TRUE(next.has_value());
      seen.insert(next->g);
      black_wins = !MoverWins(*next, 2, 0, 0.5, seen, 5);
      seen.erase(next->g);
    }
    if (black_wins) wins.push_back(m);
  }
  ASSERT_EQ(wins.size(), 1u);
  ASSERT_TRUE(wins[0].is_pass());

  for (BanditConfig cfg : {BanditConfig::Puct(0.1), BanditConfig::Gpuct(0.057, 0.737)}) {
    ScoreEvaluator eval;
    Search s(eval, cfg);
    EXPECT_EQ(s.Run(root, SearchBudget::Descents(256)).move, wins[0]) << cfg.ToString();
  }
}

TEST(Budget, Parse) {
  EXPECT_EQ(SearchBudget::Parse("descents:32").descents, 32);
  EXPECT_DOUBLE_EQ(SearchBudget::Parse("time:0.5s").seconds, 0.5);
  EXPECT_THROW(SearchBudget::Parse("steps:3"), std::invalid_argument);
  EXPECT_EQ(SearchBudget::Parse(SearchBudget::Descents(7).ToString()).descents, 7);
}

TEST(LegalSoftmax, SumsToOne) {
  std::vector<float> logits = {1, 2, 3, -100};
  std::vector<int> legal = {0, 2};
  auto p = LegalSoftmax(logits, legal);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
  EXPECT_NEAR(p[1] / p[0], std::exp(2.0), 1e-9);
}

}  // namespace
}  // namespace gpgo
