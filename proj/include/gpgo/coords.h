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

#ifndef GPGO_COORDS_H_
#define GPGO_COORDS_H_

#include <optional>
#include <string>
#include <string_view>

namespace gpgo {

// GTP column letters skip 'I'.
inline constexpr char kGtpColumns[] = "ABCDEFGHJKLMNOPQRST";

// Points are row-major with row 0 at the top of the board. GTP rows count
// from the bottom, so "A1" is the bottom-left corner.
std::string PointToGtp(int point, int size);
// Accepts "pass" (returns kPass) and case-insensitive vertices. Returns
// nullopt for anything that is not a vertex on a board of `size`.
std::optional<int> GtpToPoint(std::string_view vertex, int size);

// SGF coordinates: column letter then row letter, 'a' at the top-left.
std::string PointToSgf(int point, int size);
// Empty string and "tt" (on boards up to 19) are passes.
std::optional<int> SgfToPoint(std::string_view coord, int size);

}  // namespace gpgo

#endif  // GPGO_COORDS_H_
