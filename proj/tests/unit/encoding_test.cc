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

#include <random>
#include <set>

#include "gpgo/encoding.h"
#include "oracles.h"

namespace gpgo {
namespace {

Board RandomPosition(int n, int plies, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Board b(n, 7.5);
  for (int i = 0; i < plies && !b.is_terminal(); ++i) {
    auto moves = b.LegalMoves();
    if (moves.size() <= 1) break;
    b = b.Play(moves[rng() % (moves.size() - 1)]);
  }
  return b;
}

TEST(Encoding, PlanesAgreeWithFloodFill) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Board b = RandomPosition(9, 40, seed);
    InputTensor t = Encode(b);
    oracle::Pos pos = oracle::FromBoard(b);
    for (int p = 0; p < 81; ++p) {
      EXPECT_EQ(t.at(planes::kCurrentBlack, p), pos.g[p] == 1);
      EXPECT_EQ(t.at(planes::kCurrentWhite, p), pos.g[p] == 2);
      int libs = pos.g[p] ? static_cast<int>(oracle::FloodGroup(pos, p).libs.size()) : 0;
      for (int k = 0; k < 4; ++k) {
        bool expect = pos.g[p] && std::min(libs, 4) == k + 1;
        EXPECT_EQ(t.at(planes::kLibertiesBegin + k, p), expect);
      }
      EXPECT_EQ(t.at(planes::kWhiteToPlay, p), b.to_play() == Color::kWhite);
      LadderStatus s = LadderStatusAt(b, p);
      EXPECT_EQ(t.at(planes::kLadderCaptured, p), s == LadderStatus::kCapturedInLadder);
      EXPECT_EQ(t.at(planes::kLadderEscapes, p), s == LadderStatus::kEscapesLadder);
    }
  }
}

TEST(Encoding, HistoryPlanes) {
  Board b(9, 7.5);
  b = b.Play(Move::Play(Color::kBlack, 10));
  b = b.Play(Move::Play(Color::kWhite, 20));
  InputTensor t = Encode(b);
  // One ply back: only the black stone.
  EXPECT_EQ(t.at(planes::kHistoryBegin, 10), 1.0f);
  EXPECT_EQ(t.at(planes::kHistoryBegin + 1, 20), 0.0f);
  // Two plies back: empty board. Three and more: missing, all zero.
  for (int k = planes::kHistoryBegin + 2; k < planes::kLibertiesBegin; ++k) {
    for (float v : t.plane(k)) EXPECT_EQ(v, 0.0f);
  }
}

int Rotate90Oracle(int p, int n) {
  int r = p / n, c = p % n;
  return c * n + (n - 1 - r);
}

TEST(Symmetry, RotationsAndInverses) {
  const int n = 9;
  for (int p = 0; p < n * n; ++p) {
    EXPECT_EQ(TransformPoint(p, Symmetry::kRotate90, n), Rotate90Oracle(p, n));
    EXPECT_EQ(TransformPoint(p, Symmetry::kRotate180, n),
              Rotate90Oracle(Rotate90Oracle(p, n), n));
    for (Symmetry s : kAllSymmetries) {
      EXPECT_EQ(TransformPoint(TransformPoint(p, s, n), Inverse(s), n), p);
    }
  }
  EXPECT_EQ(TransformPolicyIndex(n * n, Symmetry::kTranspose, n), n * n);
}

TEST(Symmetry, EightDistinctImages) {
  Board b = RandomPosition(9, 15, 3);
  std::set<std::vector<float>> images;
  for (Symmetry s : kAllSymmetries) {
    InputTensor t = Transform(Encode(b), s);
    images.insert(std::vector<float>(t.data().begin(), t.data().end()));
    // Encoding commutes with transforming the board.
    EXPECT_EQ(t, Encode(Transform(b, s)));
  }
  EXPECT_EQ(images.size(), 8u);
}

TEST(Symmetry, AugmentedLabelsFollowStones) {
  Board b = RandomPosition(9, 10, 4);
  auto legal = b.LegalMoves();
  Move m = legal[legal.size() / 2];
  TrainingExample ex = MakeExample(b, m, Color::kBlack);
  for (const auto& aug : Symmetries(ex.input, ex.policy_label)) {
    EXPECT_EQ(aug.policy_label,
              TransformPolicyIndex(ex.policy_label, aug.symmetry, 9));
  }
  EXPECT_EQ(ex.value_label, 0);
  EXPECT_THROW(MakeExample(b, Move::Play(Opponent(b.to_play()), 0), Color::kBlack),
               IllegalMoveError);
}

TEST(Encoding, PolicyIndex) {
  EXPECT_EQ(PolicyIndex(Move::Pass(Color::kBlack), 9), 81);
  EXPECT_EQ(PolicyIndex(Move::Play(Color::kBlack, 40), 9), 40);
  EXPECT_TRUE(MoveFromPolicyIndex(81, Color::kWhite, 9).is_pass());
}

}  // namespace
}  // namespace gpgo
