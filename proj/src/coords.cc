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

#include "gpgo/coords.h"

#include <cctype>
#include <charconv>

#include "gpgo/board.h"

namespace gpgo {

std::string PointToGtp(int point, int size) {
  if (point == kPass) return "pass";
  int row = point / size;
  int col = point % size;
  return std::string(1, kGtpColumns[col]) + std::to_string(size - row);
}

std::optional<int> GtpToPoint(std::string_view vertex, int size) {
  std::string v;
  for (char c : vertex) v.push_back(static_cast<char>(std::tolower(c)));
  if (v == "pass") return kPass;
  if (v.size() < 2 || v.size() > 3) return std::nullopt;
  char letter = static_cast<char>(std::toupper(v[0]));
  int col = -1;
  for (int i = 0; i < size; ++i) {
    if (kGtpColumns[i] == letter) col = i;
  }
  if (col < 0) return std::nullopt;
  int number = 0;
  auto [ptr, ec] = std::from_chars(v.data() + 1, v.data() + v.size(), number);
  if (ec != std::errc() || ptr != v.data() + v.size()) return std::nullopt;
  if (number < 1 || number > size) return std::nullopt;
  return (size - number) * size + col;
}

std::string PointToSgf(int point, int size) {
  if (point == kPass) return "";
  return {static_cast<char>('a' + point % size),
          static_cast<char>('a' + point / size)};
}

std::optional<int> SgfToPoint(std::string_view coord, int size) {
  if (coord.empty()) return kPass;
  if (coord.size() != 2) return std::nullopt;
  if (coord == "tt" && size <= 19) return kPass;
  int col = coord[0] - 'a';
  int row = coord[1] - 'a';
  if (col < 0 || col >= size || row < 0 || row >= size) return std::nullopt;
  return row * size + col;
}

}  // namespace gpgo
