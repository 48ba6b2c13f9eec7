// Copyright 2026 The iiglearn Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// The experiment CSV schema. Floats carry 10 significant digits; re-parsing
// and re-formatting a file reproduces it byte for byte.

#ifndef IIG_CSV_FORMAT_H_
#define IIG_CSV_FORMAT_H_

#include <cstdint>
#include <string>
#include <vector>

namespace iig {

struct CsvRow {
  std::string game;
  std::string algo;
  uint64_t seed = 0;
  double eta = 0.0;
  double gamma = 0.0;
  int64_t episode = 0;
  double exploit_avg = 0.0;
  double exploit_last = 0.0;
  double regret_max = 0.0;
  double regret_min = 0.0;
  double theorem1_bound = 0.0;
  double wall_ms = 0.0;
};

inline constexpr const char* kCsvHeader =
    "game,algo,seed,eta,gamma,episode,exploit_avg,exploit_last,regret_max,"
    "regret_min,theorem1_bound,wall_ms";

// 10 significant digits, plain decimal point, no separators.
std::string FormatCsvValue(double value);

// `best` < 0 omits the tuner's trailing best column.
std::string FormatCsvRow(const CsvRow& row, int best = -1);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
};

// Throws StructuralError on malformed input (wrong header or field count).
CsvTable ParseCsv(const std::string& text);

}  // namespace iig

#endif  // IIG_CSV_FORMAT_H_
