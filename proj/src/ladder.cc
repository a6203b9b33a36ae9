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

#include <algorithm>

#include "gpgo/board.h"

namespace gpgo {

namespace {

// Two-sided forced race on a string with at most two liberties. The attacker
// may only fill liberties of the target; the defender may only extend from
// its last liberty or capture an adjacent string that is in atari. Reading
// past kLadderDepthLimit plies counts as an escape.
class LadderReader {
 public:
  explicit LadderReader(int target) : target_(target) {}

  // Target has one liberty and the defender moves.
  bool DefenderEscapes(const Board& b, int depth) const {
    if (depth >= kLadderDepthLimit) return true;
    const Color defender = b.at(target_);
    std::vector<int> candidates = b.StringLiberties(target_);
    for (int stone : b.StringStones(target_)) {
      for (int n : b.Neighbors(stone)) {
        if (b.at(n) == Opponent(defender) && b.Liberties(n) == 1) {
          auto libs = b.StringLiberties(n);
          candidates.push_back(libs.front());
        }
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    for (int p : candidates) {
      Move m = Move::Play(defender, p);
      if (!b.IsLegal(m)) continue;
      Board next = b.Play(m);
      int libs = next.Liberties(target_);
      if (libs >= 3) return true;
      if (libs == 2 && !AttackerCaptures(next, depth + 1)) return true;
    }
    return false;
  }

  // Target has two liberties and the attacker moves.
  bool AttackerCaptures(const Board& b, int depth) const {
    if (depth >= kLadderDepthLimit) return false;
    const Color attacker = Opponent(b.at(target_));
    for (int p : b.StringLiberties(target_)) {
      Move m = Move::Play(attacker, p);
      if (!b.IsLegal(m)) continue;
      Board next = b.Play(m);
      if (next.Liberties(target_) == 1 && !DefenderEscapes(next, depth + 1)) {
        return true;
      }
    }
    return false;
  }

 private:
  int target_;
};

}  // namespace

LadderStatus LadderStatusAt(const Board& b, int point) {
  const Color owner = b.at(point);
  if (owner == Color::kEmpty) return LadderStatus::kNotInLadder;
  int libs = b.Liberties(point);
  if (libs >= 3) return LadderStatus::kNotInLadder;
  LadderReader reader(point);
  bool captured =
      libs == 1 ? !reader.DefenderEscapes(b.WithToPlay(owner), 0)
                : reader.AttackerCaptures(b.WithToPlay(Opponent(owner)), 0);
  return captured ? LadderStatus::kCapturedInLadder
                  : LadderStatus::kEscapesLadder;
}

LadderStatus AdjacentLadderStatus(const Board& b, int point) {
  const Color owner = b.at(point);
  if (owner == Color::kEmpty) return LadderStatus::kNotInLadder;
  LadderStatus worst = LadderStatus::kNotInLadder;
  std::vector<int> seen;
  for (int stone : b.StringStones(point)) {
    for (int n : b.Neighbors(stone)) {
      if (b.at(n) != Opponent(owner)) continue;
      int id = b.StringId(n);
      if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
      seen.push_back(id);
      worst = std::max(worst, LadderStatusAt(b, n));
      if (worst == LadderStatus::kCapturedInLadder) return worst;
    }
  }
  return worst;
}

}  // namespace gpgo
