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

#include "gpgo/gtp.h"

#include <algorithm>
#include <cctype>
#include <iostream>
#include <sstream>

#include "gpgo/coords.h"

namespace gpgo {

namespace {

// Thrown by handlers; becomes a "?" response.
struct GtpError {
  std::string message;
};

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

Color ParseColor(const std::string& s) {
  std::string c = Lower(s);
  if (c == "b" || c == "black") return Color::kBlack;
  if (c == "w" || c == "white") return Color::kWhite;
  throw GtpError{"invalid color"};
}

double ParseNumber(const std::string& s) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw GtpError{"syntax error"};
}

int ParseInt(const std::string& s) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw GtpError{"syntax error"};
}

void Arity(const std::vector<std::string>& args, size_t n) {
  if (args.size() < n) throw GtpError{"syntax error"};
}

}  // namespace

GtpSession::GtpSession(PlayerSpec player, int board_size, double komi)
    : player_(std::move(player)),
      size_(board_size),
      komi_(komi),
      board_(board_size, komi) {
  Resolve(player_, size_);
}

PlayerSpec GtpSession::DefaultPlayer() {
  PlayerSpec p;
  p.name = "gpgo";
  p.kind = PlayerKind::kSearch;
  p.bandit = BanditConfig::Gpuct(0.057, 0.737);
  p.budget = SearchBudget::Descents(64);
  return p;
}

const std::vector<std::string>& GtpSession::Commands() {
  static const std::vector<std::string> kCommands = {
      "protocol_version", "name",          "version",
      "known_command",    "list_commands", "boardsize",
      "clear_board",      "komi",          "play",
      "genmove",          "showboard",     "time_settings",
      "quit",             "gpgo-set-budget", "gpgo-set-bandit",
      "gpgo-load-weights", "gpgo-policy-only"};
  return kCommands;
}

std::string GtpSession::Handle(std::string_view raw) {
  std::string line;
  for (char c : raw) {
    if (c == '#') break;
    if (c == '\t') c = ' ';
    if (c == '\r' || (static_cast<unsigned char>(c) < 32 && c != '\n')) continue;
    line.push_back(c);
  }
  std::istringstream ss(line);
  std::vector<std::string> words;
  for (std::string w; ss >> w;) words.push_back(w);
  if (words.empty()) return "";

  std::string id;
  if (std::all_of(words[0].begin(), words[0].end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    id = words[0];
    words.erase(words.begin());
    if (words.empty()) return "?" + id + " syntax error\n\n";
  }
  ++commands_;
  std::string cmd = words[0];
  words.erase(words.begin());
  try {
    std::string result = Dispatch(cmd, words);
    return "=" + id + (result.empty() ? "" : " " + result) + "\n\n";
  } catch (const GtpError& e) {
    return "?" + id + " " + e.message + "\n\n";
  } catch (const std::exception& e) {
    return "?" + id + " " + e.what() + "\n\n";
  }
}

std::string GtpSession::Dispatch(const std::string& cmd,
                                 const std::vector<std::string>& args) {
  if (cmd == "protocol_version") return "2";
  if (cmd == "name") return "gpgo";
  if (cmd == "version") return "1.0";
  if (cmd == "known_command") {
    Arity(args, 1);
    const auto& known = Commands();
    return std::ranges::find(known, args[0]) != known.end() ? "true" : "false";
  }
  if (cmd == "list_commands") {
    std::string out;
    for (const auto& c : Commands()) out += (out.empty() ? "" : "\n") + c;
    return out;
  }
  if (cmd == "quit") {
    quit_ = true;
    return "";
  }
  if (cmd == "boardsize") {
    Arity(args, 1);
    int size = ParseInt(args[0]);
    if (!Board::IsSupportedSize(size)) throw GtpError{"unacceptable size"};
    PlayerSpec p = player_;
    if (!p.weights.empty()) {
      p.evaluator.reset();
      Resolve(p, size);
    }
    player_ = std::move(p);
    size_ = size;
    board_ = Board(size_, komi_);
    return "";
  }
  if (cmd == "clear_board") {
    board_ = Board(size_, komi_);
    return "";
  }
  if (cmd == "komi") {
    Arity(args, 1);
    double k = ParseNumber(args[0]);
    try {
      board_ = board_.WithKomi(k);
    } catch (const std::invalid_argument&) {
      throw GtpError{"komi must be a multiple of 0.5"};
    }
    komi_ = k;
    return "";
  }
  if (cmd == "play") {
    Arity(args, 2);
    Color color = ParseColor(args[0]);
    auto point = GtpToPoint(args[1], size_);
    if (!point) throw GtpError{"illegal move"};
    Board b = color == board_.to_play() ? board_ : board_.WithToPlay(color);
    if (!b.IsLegal(Move{color, *point})) throw GtpError{"illegal move"};
    board_ = b.Play(Move{color, *point});
    return "";
  }
  if (cmd == "genmove") {
    Arity(args, 1);
    Color color = ParseColor(args[0]);
    Board b = color == board_.to_play() ? board_ : board_.WithToPlay(color);
    if (b.is_terminal()) return "pass";
    Move m = ChooseMove(player_, b);
    board_ = b.Play(m);
    return PointToGtp(m.point, size_);
  }
  if (cmd == "showboard") {
    std::string text = board_.ToString();
    text.pop_back();  // no blank line inside a response
    return "\n" + text;
  }
  if (cmd == "time_settings") {
    Arity(args, 3);
    double main_time = ParseNumber(args[0]);
    double byo_time = ParseNumber(args[1]);
    int byo_stones = ParseInt(args[2]);
    // A fixed per-move allowance: byo-yomi share if any, else a slice of
    // main time.
    double per_move = byo_stones > 0 ? byo_time / byo_stones : main_time / 60.0;
    if (per_move > 0) player_.budget = SearchBudget::Seconds(per_move);
    return "";
  }
  if (cmd == "gpgo-set-budget") {
    Arity(args, 1);
    player_.budget = SearchBudget::Parse(args[0]);
    return "";
  }
  if (cmd == "gpgo-set-bandit") {
    Arity(args, 2);
    std::string kind = Lower(args[0]);
    BanditConfig cfg;
    if (kind == "puct") {
      cfg = BanditConfig::Puct(ParseNumber(args[1]));
    } else if (kind == "gpuct") {
      Arity(args, 3);
      cfg = BanditConfig::Gpuct(ParseNumber(args[1]), ParseNumber(args[2]));
    } else {
      throw GtpError{"unknown bandit"};
    }
    cfg.fpu = player_.bandit.fpu;
    cfg.Validate();
    player_.bandit = cfg;
    return "";
  }
  if (cmd == "gpgo-load-weights") {
    Arity(args, 1);
    PlayerSpec p = player_;
    p.weights = args[0];
    p.evaluator.reset();
    Resolve(p, size_);
    player_ = std::move(p);
    return "";
  }
  if (cmd == "gpgo-policy-only") {
    Arity(args, 1);
    std::string v = Lower(args[0]);
    if (v != "on" && v != "off") throw GtpError{"syntax error"};
    player_.kind = v == "on" ? PlayerKind::kPolicyOnly : PlayerKind::kSearch;
    return "";
  }
  throw GtpError{"unknown command"};
}

void GtpSession::Run(std::istream& in, std::ostream& out) {
  for (std::string line; !quit_ && std::getline(in, line);) {
    std::string response = Handle(line);
    if (response.empty()) continue;
    out << response << std::flush;
  }
}

}  // namespace gpgo
