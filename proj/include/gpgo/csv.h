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

#ifndef GPGO_CSV_H_
#define GPGO_CSV_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gpgo {

// Header row plus string cells. Quoted fields with embedded commas and
// doubled quotes are supported; lines starting with '#' are comments.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws std::out_of_range for a missing column.
  size_t Column(std::string_view name) const;
  double Number(size_t row, std::string_view column) const;
  const std::string& Text(size_t row, std::string_view column) const;
};

CsvTable ParseCsv(std::string_view text);
CsvTable ReadCsv(const std::string& path);
void WriteCsv(std::ostream& out, const CsvTable& table);
std::string FormatNumber(double v, int precision = 6);

}  // namespace gpgo

#endif  // GPGO_CSV_H_
