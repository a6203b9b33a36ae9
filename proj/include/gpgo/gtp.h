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

#ifndef GPGO_GTP_H_
#define GPGO_GTP_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gpgo/board.h"
#include "gpgo/harness.h"

namespace gpgo {

// One GTP v2 session. Standard commands plus:
//   gpgo-set-budget descents:N | time:Ts
//   gpgo-set-bandit puct C | gpuct C TAU
//   gpgo-load-weights PATH
//   gpgo-policy-only on|off
class GtpSession {
 public:
  explicit GtpSession(PlayerSpec player = DefaultPlayer(), int board_size = 19,
                      double komi = 7.5);

  // Handles one command line and returns the full framed response,
  // "=[id] result\n\n" or "?[id] error\n\n". Empty lines and comments give
  // an empty string.
  std::string Handle(std::string_view line);

  // Reads commands until EOF or quit.
  void Run(std::istream& in, std::ostream& out);

  bool quit() const { return quit_; }
  const Board& board() const { return board_; }
  int64_t commands_handled() const { return commands_; }

  static PlayerSpec DefaultPlayer();
  static const std::vector<std::string>& Commands();

 private:
  std::string Dispatch(const std::string& cmd,
                       const std::vector<std::string>& args);

  PlayerSpec player_;
  int size_;
  double komi_;
  Board board_;
  int64_t commands_ = 0;
  bool quit_ = false;
};

}  // namespace gpgo

#endif  // GPGO_GTP_H_
