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

#include "gpgo/sgf.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

#include "gpgo/coords.h"
#include "json.hpp"

namespace gpgo {

namespace {

using Property = std::pair<std::string, std::vector<std::string>>;
using Node = std::vector<Property>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  bool AtTreeStart() {
    SkipSpace();
    return pos_ < text_.size() && text_[pos_] == '(';
  }

  // Main line of the next game tree, as a flat list of nodes.
  std::vector<Node> MainLine() {
    std::vector<Node> nodes;
    Expect('(');
    ParseSequence(nodes);
    ContinueVariations(nodes);
    return nodes;
  }

 private:
  // Follows the first variation of each branch point and consumes the
  // closing parenthesis of the current tree.
  void ContinueVariations(std::vector<Node>& nodes) {
    bool first = true;
    while (Peek() == '(') {
      if (first) {
        Expect('(');
        ParseSequence(nodes);
        ContinueVariations(nodes);
        first = false;
      } else {
        SkipTree();
      }
    }
    Expect(')');
  }

  void ParseSequence(std::vector<Node>& nodes) {
    if (Peek() != ';') Fail("expected ';' to start a node");
    while (Peek() == ';') {
      ++pos_;
      Node node;
      while (true) {
        SkipSpace();
        if (pos_ >= text_.size()) Fail("unexpected end of input");
        char ch = text_[pos_];
        if (!std::isalpha(static_cast<unsigned char>(ch))) break;
        std::string ident;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
          // Old files mix lowercase letters into identifiers; FF[4] ignores
          // them.
          if (std::isupper(static_cast<unsigned char>(text_[pos_]))) {
            ident.push_back(text_[pos_]);
          }
          ++pos_;
        }
        std::vector<std::string> values;
        while (Peek() == '[') values.push_back(Value());
        if (values.empty()) Fail("property " + ident + " has no value");
        node.emplace_back(std::move(ident), std::move(values));
      }
      nodes.push_back(std::move(node));
    }
  }

  std::string Value() {
    Expect('[');
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) Fail("unterminated property value");
      char ch = text_[pos_++];
      if (ch == ']') break;
      if (ch == '\\') {
        if (pos_ >= text_.size()) Fail("unterminated property value");
        char next = text_[pos_++];
        // Escaped line breaks are soft and vanish.
        if (next == '\n' || next == '\r') {
          if (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r') &&
              text_[pos_] != next) {
            ++pos_;
          }
          continue;
        }
        out.push_back(next);
        continue;
      }
      out.push_back(ch);
    }
    return out;
  }

  void SkipTree() {
    Expect('(');
    int depth = 1;
    while (depth > 0) {
      if (pos_ >= text_.size()) Fail("unbalanced parentheses");
      char ch = text_[pos_];
      if (ch == '[') {
        Value();
        continue;
      }
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      ++pos_;
    }
  }

  char Peek() {
    SkipSpace();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void Expect(char ch) {
    if (Peek() != ch) Fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void Fail(const std::string& why) {
    throw SgfError("malformed SGF at offset " + std::to_string(pos_) + ": " +
                   why);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

int ParseSize(const std::string& v) {
  std::string s = v;
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    if (s.substr(0, colon) != s.substr(colon + 1)) {
      throw SgfError("non-square boards are not supported");
    }
    s = s.substr(0, colon);
  }
  int size = 0;
  try {
    size_t used = 0;
    size = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw SgfError("bad SZ value '" + v + "'");
  }
  if (!Board::IsSupportedSize(size)) {
    throw SgfError("unsupported board size " + std::to_string(size));
  }
  return size;
}

int ParsePoint(const std::string& v, int size, bool allow_pass) {
  auto p = SgfToPoint(v, size);
  if (!p || (*p == kPass && !allow_pass)) {
    throw SgfError("illegal coordinate '" + v + "' on a " +
                   std::to_string(size) + " board");
  }
  return *p;
}

// AB/AW may use compressed point lists "aa:cc".
std::vector<int> ParsePointList(const std::vector<std::string>& values,
                                int size) {
  std::vector<int> out;
  for (const auto& v : values) {
    if (v.size() == 5 && v[2] == ':') {
      int a = ParsePoint(v.substr(0, 2), size, false);
      int b = ParsePoint(v.substr(3, 2), size, false);
      int r0 = std::min(a / size, b / size), r1 = std::max(a / size, b / size);
      int c0 = std::min(a % size, b % size), c1 = std::max(a % size, b % size);
      for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) out.push_back(r * size + c);
      }
    } else {
      out.push_back(ParsePoint(v, size, false));
    }
  }
  return out;
}

GameRecord Interpret(const std::vector<Node>& nodes) {
  GameRecord g;
  if (nodes.empty()) throw SgfError("game tree has no nodes");
  g.board_size = 19;
  for (const auto& [id, values] : nodes[0]) {
    if (id == "SZ") g.board_size = ParseSize(values[0]);
  }
  const int size = g.board_size;
  for (size_t n = 0; n < nodes.size(); ++n) {
    const bool root = n == 0;
    std::optional<Move> move;
    std::string comment;
    for (const auto& [id, values] : nodes[n]) {
      if (id == "B" || id == "W") {
        if (move) throw SgfError("two moves in one node");
        Color c = id == "B" ? Color::kBlack : Color::kWhite;
        move = Move{c, ParsePoint(values[0], size, true)};
      } else if (id == "AB" || id == "AW" || id == "AE") {
        if (!root) throw SgfError("setup properties after the root node");
        if (id == "AE") continue;
        auto pts = ParsePointList(values, size);
        auto& dst = id == "AB" ? g.black_setup : g.white_setup;
        dst.insert(dst.end(), pts.begin(), pts.end());
      } else if (id == "C") {
        comment = values[0];
      } else if (!root) {
        continue;
      } else if (id == "SZ" || id == "GM") {
        if (id == "GM" && values[0] != "1") throw SgfError("not a Go record");
      } else if (id == "KM") {
        try {
          g.komi = std::stod(values[0]);
        } catch (const std::exception&) {
          throw SgfError("bad KM value '" + values[0] + "'");
        }
      } else if (id == "PL") {
        if (values[0] == "B" || values[0] == "b") {
          g.first_player = Color::kBlack;
        } else if (values[0] == "W" || values[0] == "w") {
          g.first_player = Color::kWhite;
        } else {
          throw SgfError("bad PL value '" + values[0] + "'");
        }
      } else {
        if (id == "RE") g.result = ParseResult(values[0]);
        g.metadata[id] = values[0];
      }
    }
    if (move) {
      g.moves.push_back(*move);
      g.move_comments.push_back(comment);
    } else if (root && !comment.empty()) {
      g.metadata["C"] = comment;
    }
  }
  return g;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == ']' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

std::string FormatKomi(double komi) {
  std::ostringstream ss;
  ss << komi;
  return ss.str();
}

// Unbiased draw in [0, n) from the raw generator, so splits do not depend
// on the standard library's distribution implementations.
uint64_t Below(std::mt19937_64& rng, uint64_t n) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace

GameResult ParseResult(std::string_view re) {
  if (re.empty()) return GameResult::kUnknown;
  if (re == "0" || re == "Draw" || re == "draw" || re == "Jigo") {
    return GameResult::kDraw;
  }
  if (re.size() >= 2 && re[1] == '+') {
    if (re[0] == 'B' || re[0] == 'b') return GameResult::kBlackWin;
    if (re[0] == 'W' || re[0] == 'w') return GameResult::kWhiteWin;
  }
  return GameResult::kUnknown;
}

GameRecord ParseSgf(std::string_view text) {
  Parser p(text);
  if (!p.AtTreeStart()) throw SgfError("malformed SGF: no game tree");
  return Interpret(p.MainLine());
}

std::vector<GameRecord> ParseSgfCollection(std::string_view text) {
  Parser p(text);
  std::vector<GameRecord> games;
  while (p.AtTreeStart()) games.push_back(Interpret(p.MainLine()));
  if (games.empty()) throw SgfError("malformed SGF: no game tree");
  return games;
}

std::string EmitSgf(const GameRecord& g) {
  const int size = g.board_size;
  std::ostringstream out;
  out << "(;GM[1]SZ[" << size << "]KM[" << FormatKomi(g.komi) << "]";
  auto re = g.metadata.find("RE");
  if (re != g.metadata.end()) {
    out << "RE[" << Escape(re->second) << "]";
  } else if (g.result == GameResult::kBlackWin) {
    out << "RE[B+]";
  } else if (g.result == GameResult::kWhiteWin) {
    out << "RE[W+]";
  } else if (g.result == GameResult::kDraw) {
    out << "RE[0]";
  }
  if (g.first_player != Color::kEmpty) {
    out << "PL[" << (g.first_player == Color::kBlack ? "B" : "W") << "]";
  }
  auto points = [&](const char* id, const std::vector<int>& pts) {
    if (pts.empty()) return;
    out << id;
    for (int p : pts) out << "[" << PointToSgf(p, size) << "]";
  };
  points("AB", g.black_setup);
  points("AW", g.white_setup);
  for (const auto& [key, value] : g.metadata) {
    if (key == "RE") continue;
    out << key << "[" << Escape(value) << "]";
  }
  for (size_t i = 0; i < g.moves.size(); ++i) {
    const Move& m = g.moves[i];
    out << ";" << (m.color == Color::kBlack ? "B" : "W") << "["
        << PointToSgf(m.point, size) << "]";
    if (i < g.move_comments.size() && !g.move_comments[i].empty()) {
      out << "C[" << Escape(g.move_comments[i]) << "]";
    }
  }
  out << ")";
  return out.str();
}

std::optional<Board> Replay(const GameRecord& g) {
  try {
    Board b(g.board_size, g.komi);
    std::vector<Move> setup;
    for (int p : g.black_setup) setup.push_back(Move::Play(Color::kBlack, p));
    for (int p : g.white_setup) setup.push_back(Move::Play(Color::kWhite, p));
    if (!setup.empty()) b = b.WithSetupStones(setup);
    if (g.first_player != Color::kEmpty) b = b.WithToPlay(g.first_player);
    for (const Move& m : g.moves) {
      if (b.is_terminal()) return std::nullopt;
      if (m.color != b.to_play()) b = b.WithToPlay(m.color);
      b = b.Play(m);
    }
    return b;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<GameRecord> FilterKatago(const std::vector<GameRecord>& games,
                                     double min_komi, double max_komi,
                                     int size, int64_t take_last,
                                     FilterSummary* summary) {
  FilterSummary s;
  std::vector<const GameRecord*> matched;
  for (const auto& g : games) {
    ++s.seen;
    if (g.board_size != size) {
      ++s.wrong_size;
    } else if (g.komi < min_komi || g.komi > max_komi) {
      ++s.komi_out_of_range;
    } else {
      matched.push_back(&g);
    }
  }
  s.matched = static_cast<int64_t>(matched.size());
  size_t skip = take_last < 0 || static_cast<size_t>(take_last) >= matched.size()
                    ? 0
                    : matched.size() - static_cast<size_t>(take_last);
  std::vector<GameRecord> out;
  for (size_t i = skip; i < matched.size(); ++i) out.push_back(*matched[i]);
  s.kept = static_cast<int64_t>(out.size());
  if (summary != nullptr) *summary = s;
  return out;
}

DatasetSplit MakeSplit(const std::vector<GameRecord>& games,
                       size_t validation_count, uint64_t seed) {
  if (validation_count > games.size()) {
    throw std::invalid_argument("validation count exceeds number of games");
  }
  std::mt19937_64 rng(seed);
  std::vector<size_t> order(games.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  DatasetSplit split;
  std::vector<bool> in_validation(games.size(), false);
  for (size_t k = 0; k < validation_count; ++k) {
    size_t j = k + Below(rng, order.size() - k);
    std::swap(order[k], order[j]);
    const size_t game = order[k];
    const size_t n = games[game].moves.size();
    if (n == 0) {
      throw std::invalid_argument("validation game " + std::to_string(game) +
                                  " has no moves");
    }
    split.validation.push_back({game, static_cast<int>(Below(rng, n))});
    in_validation[game] = true;
  }
  for (size_t i = 0; i < games.size(); ++i) {
    if (!in_validation[i]) split.training.push_back(i);
  }
  return split;
}

std::string IngestReport::SummaryJson() const {
  nlohmann::ordered_json j;
  j["files"] = files;
  j["unreadable_files"] = unreadable_files;
  j["parse_errors"] = parse_errors;
  j["games_seen"] = filter.seen;
  j["skipped_wrong_size"] = filter.wrong_size;
  j["skipped_komi"] = filter.komi_out_of_range;
  j["rejected_replay"] = replay_rejected;
  j["kept"] = games.size();
  j["training_games"] = split.training.size();
  j["validation_states"] = split.validation.size();
  return j.dump(2);
}

IngestReport IngestManifest(const std::string& manifest_path,
                            const IngestOptions& options) {
  std::ifstream manifest(manifest_path);
  if (!manifest) throw std::runtime_error("cannot open " + manifest_path);
  std::vector<std::string> paths;
  for (std::string line; std::getline(manifest, line);) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') continue;
    paths.push_back(line);
  }
  std::ranges::sort(paths);

  IngestReport report;
  std::vector<GameRecord> parsed;
  for (const auto& path : paths) {
    ++report.files;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      ++report.unreadable_files;
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      auto games = ParseSgfCollection(ss.str());
      for (auto& g : games) parsed.push_back(std::move(g));
    } catch (const SgfError&) {
      ++report.parse_errors;
    }
  }

  auto matched = FilterKatago(parsed, options.min_komi, options.max_komi,
                              options.board_size, -1, &report.filter);
  std::vector<GameRecord> legal;
  for (auto& g : matched) {
    if (Replay(g)) {
      legal.push_back(std::move(g));
    } else {
      ++report.replay_rejected;
    }
  }
  size_t skip = legal.size() > static_cast<size_t>(options.take_last)
                    ? legal.size() - static_cast<size_t>(options.take_last)
                    : 0;
  report.games.assign(std::make_move_iterator(legal.begin() + skip),
                      std::make_move_iterator(legal.end()));
  report.filter.kept = static_cast<int64_t>(report.games.size());
  // Games without moves cannot supply a validation state.
  std::vector<GameRecord> usable;
  size_t with_moves = 0;
  for (const auto& g : report.games) with_moves += g.moves.empty() ? 0 : 1;
  size_t count = std::min(options.validation_count, with_moves);
  if (with_moves == report.games.size()) {
    report.split = MakeSplit(report.games, count, options.seed);
  } else {
    // Keep move-less games in training only.
    std::vector<size_t> index;
    for (size_t i = 0; i < report.games.size(); ++i) {
      if (!report.games[i].moves.empty()) {
        index.push_back(i);
        usable.push_back(report.games[i]);
      }
    }
    DatasetSplit inner = MakeSplit(usable, count, options.seed);
    std::vector<bool> val(report.games.size(), false);
    for (auto v : inner.validation) {
      report.split.validation.push_back({index[v.game], v.move_index});
      val[index[v.game]] = true;
    }
    for (size_t i = 0; i < report.games.size(); ++i) {
      if (!val[i]) report.split.training.push_back(i);
    }
  }
  return report;
}

}  // namespace gpgo
