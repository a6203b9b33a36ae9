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

// Random-playout fuzzing of the rules engine against the flood-fill oracle.

#ifndef GPGO_TESTS_FUZZ_H_
#define GPGO_TESTS_FUZZ_H_

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gpgo/board.h"
#include "oracles.h"

namespace oracle {

struct FuzzReport {
  int64_t games = 0;
  int64_t plies = 0;
  int64_t liberty_violations = 0;
  int64_t superko_violations = 0;
  int64_t conservation_violations = 0;
  int64_t legality_violations = 0;
  int64_t score_violations = 0;
  std::string first_failure;

  int64_t total() const {
    return liberty_violations + superko_violations + conservation_violations +
           legality_violations + score_violations;
  }
};

namespace internal {

inline std::string Key(const Pos& p) {
  return std::string(p.g.begin(), p.g.end());
}

inline void Note(FuzzReport& r, int64_t& counter, const std::string& what) {
  ++counter;
  if (r.first_failure.empty()) r.first_failure = what;
}

}  // namespace internal

// Plays `games` random games of size `n` (uniform over legal placements,
// passing with probability 1/50 or when nothing else is legal). Liberties,
// captures, stone conservation and positional superko are checked after
// every ply; the full legal-move set is compared with the oracle every
// `legality_every` plies; the final area score is compared at the end.
inline FuzzReport FuzzRules(int64_t games, int n, uint64_t seed,
                            int legality_every) {
  using gpgo::Board;
  using gpgo::Color;
  using gpgo::Move;
  FuzzReport r;
  std::mt19937_64 rng(seed);
  for (int64_t g = 0; g < games; ++g) {
    Board b(n, 7.5);
    Pos pos = FromBoard(b);
    std::set<std::string> seen = {internal::Key(pos)};
    int placed[3] = {0, 0, 0};
    const int cap = 2 * n * n;
    for (int ply = 0; ply < cap && !b.is_terminal(); ++ply) {
      auto legal = b.LegalMoves();
      const Color me = b.to_play();
      if (legality_every > 0 && ply % legality_every == 0) {
        std::vector<int> expected;
        for (int p = 0; p < n * n; ++p) {
          auto next = PlayRaw(pos, p, static_cast<int>(me));
          if (next && !seen.count(internal::Key(*next))) expected.push_back(p);
        }
        std::vector<int> got;
        for (const Move& m : legal) {
          if (!m.is_pass()) got.push_back(m.point);
        }
        if (got != expected || legal.empty() || !legal.back().is_pass()) {
          std::ostringstream ss;
          ss << "game " << g << " ply " << ply << ": legal move set differs";
          internal::Note(r, r.legality_violations, ss.str());
        }
      }
      Move m = legal.back();
      if (legal.size() > 1 && rng() % 50 != 0) {
        m = legal[rng() % (legal.size() - 1)];
      }
      b = b.Play(m);
      ++r.plies;
      if (!m.is_pass()) {
        ++placed[static_cast<int>(me)];
        auto next = PlayRaw(pos, m.point, static_cast<int>(me));
        if (!next) {
          internal::Note(r, r.legality_violations,
                         "engine accepted a move the oracle rejects");
          break;
        }
        pos = *next;
        if (!seen.insert(internal::Key(pos)).second) {
          internal::Note(r, r.superko_violations,
                         "game " + std::to_string(g) + ": position repeated");
        }
      }
      if (FromBoard(b).g != pos.g) {
        internal::Note(r, r.liberty_violations,
                       "game " + std::to_string(g) + ": capture result differs");
        break;
      }
      for (int p = 0; p < n * n; ++p) {
        if (pos.g[p] == 0) continue;
        Group grp = FloodGroup(pos, p);
        if (grp.libs.empty() ||
            b.Liberties(p) != static_cast<int>(grp.libs.size())) {
          internal::Note(r, r.liberty_violations,
                         "game " + std::to_string(g) + ": liberty count at " +
                             std::to_string(p));
          break;
        }
      }
      for (Color c : {Color::kBlack, Color::kWhite}) {
        int on_board = 0;
        for (int v : pos.g) on_board += v == static_cast<int>(c);
        if (b.stone_count(c) != on_board ||
            placed[static_cast<int>(c)] - b.captured_stones(c) != on_board) {
          internal::Note(r, r.conservation_violations,
                         "game " + std::to_string(g) + ": stone count");
        }
      }
    }
    if (b.AreaScore() != AreaScore(pos, 7.5)) {
      internal::Note(r, r.score_violations,
                     "game " + std::to_string(g) + ": area score");
    }
    ++r.games;
  }
  return r;
}

}  // namespace oracle

#endif  // GPGO_TESTS_FUZZ_H_
